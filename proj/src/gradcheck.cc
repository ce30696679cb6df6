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

#include "actx/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "actx/error.h"
#include "actx/rng.h"

namespace actx {
namespace {

Evaluation Evaluate(const Objective& f, const Tensor& x) {
  Evaluation e = f(x);
  if (!std::isfinite(e.value)) {
    throw NumericError("objective returned a non-finite value");
  }
  return e;
}

}  // namespace

std::vector<std::size_t> SampleProbeIndices(std::size_t numel,
                                            std::size_t probes,
                                            std::uint64_t seed) {
  std::vector<std::size_t> all(numel);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (probes >= numel) return all;
  Rng rng(seed);
  for (std::size_t i = 0; i < probes; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(numel - i));
    std::swap(all[i], all[j]);
  }
  all.resize(probes);
  std::sort(all.begin(), all.end());
  return all;
}

GradCheckReport CheckGradient(const Objective& f, const Tensor& x,
                              const Tensor& analytic,
                              const GradCheckOptions& options) {
  if (options.probes < 1) throw Error("gradcheck needs at least one probe");
  const auto indices =
      SampleProbeIndices(x.numel(), options.probes, options.seed);
  return CheckGradientAt(f, x, analytic, indices, options);
}

GradCheckReport CheckGradientAt(const Objective& f, const Tensor& x,
                                const Tensor& analytic,
                                std::span<const std::size_t> indices,
                                const GradCheckOptions& options) {
  if (!(options.step > 0.0)) throw Error("gradcheck step must be positive");
  if (analytic.dims() != x.dims()) {
    throw ShapeError("analytic gradient " + ShapeToString(analytic.dims()) +
                     " does not match input " + ShapeToString(x.dims()));
  }
  GradCheckReport report;
  report.step = options.step;
  const Evaluation base = Evaluate(f, x);

  Tensor probe = x;
  for (std::size_t i : indices) {
    if (i >= x.numel()) throw ShapeError("probe index out of range");
    ++report.probed;
    const float original = x[i];
    const float plus = static_cast<float>(original + options.step);
    const float minus = static_cast<float>(original - options.step);

    probe[i] = plus;
    const Evaluation fp = Evaluate(f, probe);
    probe[i] = minus;
    const Evaluation fm = Evaluate(f, probe);
    probe[i] = original;

    if (fp.signature != base.signature || fm.signature != base.signature) {
      ++report.skipped;
      continue;
    }
    const double numeric =
        (fp.value - fm.value) /
        (static_cast<double>(plus) - static_cast<double>(minus));
    const double a = analytic[i];
    const double abs_err = std::abs(a - numeric);
    const double denom =
        std::max({std::abs(a), std::abs(numeric), options.denominator_floor});
    const double rel_err = abs_err / denom;
    report.max_abs_error = std::max(report.max_abs_error, abs_err);
    if (rel_err > report.max_rel_error || report.worst_index < 0) {
      report.max_rel_error = std::max(report.max_rel_error, rel_err);
      report.worst_index = static_cast<std::int64_t>(i);
    }
  }
  return report;
}

}  // namespace actx
