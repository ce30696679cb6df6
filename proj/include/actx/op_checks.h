// Copyright 2026 The actx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef ACTX_OP_CHECKS_H_
#define ACTX_OP_CHECKS_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "actx/gradcheck.h"

namespace actx {

// Seeded random problems for checking each backward pass end to end. Every
// problem evaluates sum_k c_k * out_k for fixed random coefficients c, except
// kMultitaskLoss which checks the loss itself.
enum class CheckedOp {
  kRoiPool,
  kRoiAlign,
  kMineFeatures,  // d/dF of the mined feature, selections frozen
  kMineScorer,    // d/d(scorer weights, bias)
  kMultitaskLoss,
};

std::string_view CheckedOpName(CheckedOp op);
std::optional<CheckedOp> ParseCheckedOp(std::string_view name);

// Builds the problem for `seed` and runs CheckGradient on it with `options`.
GradCheckReport CheckOpGradient(CheckedOp op, std::uint64_t seed,
                                const GradCheckOptions& options);

// Number of input coordinates of the problem, e.g. to probe all of them.
std::size_t OpCheckInputSize(CheckedOp op, std::uint64_t seed);

}  // namespace actx

#endif  // ACTX_OP_CHECKS_H_
