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

#ifndef ACTX_GRADCHECK_H_
#define ACTX_GRADCHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "actx/tensor.h"

namespace actx {

// Value of a scalar objective together with a signature of its discrete
// state (pooling argmaxes, mining selections). Probes whose perturbed
// signatures differ from the unperturbed one are skipped.
struct Evaluation {
  double value = 0.0;
  std::vector<std::int64_t> signature;
};

using Objective = std::function<Evaluation(const Tensor&)>;

struct GradCheckOptions {
  // f32 inputs leave ~7 significant digits, so the step cannot go much below
  // 1e-2 before cancellation dominates the central difference.
  double step = 1e-2;
  std::size_t probes = 64;  // probes >= numel checks every coordinate
  std::uint64_t seed = 0;
  // Relative error is |a - n| / max(|a|, |n|, denominator_floor). Rounding
  // of f32 outputs leaves up to ~1e-4 absolute noise in the difference
  // quotient at h = 1e-2, so gradients well below the floor are in effect
  // judged by absolute error.
  double denominator_floor = 1e-1;
};

struct GradCheckReport {
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::int64_t worst_index = -1;  // flat index of the max relative error
  double step = 0.0;
  std::size_t probed = 0;
  std::size_t skipped = 0;

  std::size_t checked() const { return probed - skipped; }
  double unskipped_fraction() const {
    return probed == 0 ? 0.0 : static_cast<double>(checked()) / probed;
  }
  bool Passed(double rel_tolerance) const {
    return checked() > 0 && max_rel_error <= rel_tolerance;
  }
};

// Distinct flat indices in [0, numel), min(probes, numel) of them, in
// ascending order.
std::vector<std::size_t> SampleProbeIndices(std::size_t numel,
                                            std::size_t probes,
                                            std::uint64_t seed);

// Central differences (f(x + h e_i) - f(x - h e_i)) / (x_i^+ - x_i^-) against
// analytic[i], where x_i^{+/-} are the perturbed values as actually stored in
// f32. Throws NumericError if f returns a non-finite value.
GradCheckReport CheckGradient(const Objective& f, const Tensor& x,
                              const Tensor& analytic,
                              const GradCheckOptions& options);
GradCheckReport CheckGradientAt(const Objective& f, const Tensor& x,
                                const Tensor& analytic,
                                std::span<const std::size_t> indices,
                                const GradCheckOptions& options);

}  // namespace actx

#endif  // ACTX_GRADCHECK_H_
