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

#ifndef ACTX_PARALLEL_H_
#define ACTX_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace actx {

// Jobs count from the ACTX_JOBS environment variable, or 1.
std::size_t DefaultJobs();

// Calls fn(i) for every i in [0, n) using up to `jobs` threads. Work items
// are independent; callers write results into per-index slots so output
// order never depends on scheduling. If items throw, the exception of the lowest
// failing index is rethrown after all threads join.
void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace actx

#endif  // ACTX_PARALLEL_H_
