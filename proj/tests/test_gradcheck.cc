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


#include <cmath>

#include "actx/error.h"
#include "actx/gradcheck.h"
#include "actx/op_checks.h"
#include "doctest.h"
#include "test_util.h"

namespace actx {
namespace {

Evaluation Sum(const Tensor& x) {
  double s = 0.0;
  for (float v : x.data()) s += v;
  return {s, {}};
}

Evaluation HalfSquaredNorm(const Tensor& x) {
  double s = 0.0;
  for (float v : x.data()) s += 0.5 * static_cast<double>(v) * v;
  return {s, {}};
}

TEST_CASE("the sum has an all-ones gradient") {
  Rng rng(71);
  const Tensor x = testing::RandomTensor(rng, {4, 5});
  GradCheckOptions o;
  o.probes = 100;
  const GradCheckReport r = CheckGradient(Sum, x, Tensor::Full({4, 5}, 1.0f), o);
  CHECK(r.probed == 20);
  CHECK(r.skipped == 0);
  CHECK(r.max_abs_error <= 1e-5);
  CHECK(r.Passed(1e-5));
}

TEST_CASE("half squared norm has gradient x") {
  Rng rng(72);
  const Tensor x = testing::RandomTensor(rng, {50});
  GradCheckOptions o;
  o.probes = 50;
  const GradCheckReport r = CheckGradient(HalfSquaredNorm, x, x, o);
  CHECK(r.Passed(1e-4));
  CHECK(r.step == 1e-2);
}

TEST_CASE("a wrong gradient is detected") {
  const Tensor x = Tensor::Full({3}, 2.0f);
  GradCheckOptions o;
  const GradCheckReport r = CheckGradient(HalfSquaredNorm, x, Tensor::Full({3}, 2.5f), o);
  CHECK_FALSE(r.Passed(1e-3));
  CHECK(r.max_rel_error == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(r.worst_index >= 0);
}

TEST_CASE("quadratic error shrinks with the step") {
  // f = sum x^3 / 3 has second-order central difference error h^2 / 3.
  auto cube = [](const Tensor& x) {
    double s = 0.0;
    for (float v : x.data()) s += std::pow(static_cast<double>(v), 3) / 3.0;
    return Evaluation{s, {}};
  };
  const Tensor x = Tensor::Full({1}, 1.0f);
  const Tensor g = Tensor::Full({1}, 1.0f);
  GradCheckOptions coarse;
  coarse.step = 1e-1;
  GradCheckOptions fine;
  fine.step = 1e-2;
  const double e1 = CheckGradient(cube, x, g, coarse).max_abs_error;
  const double e2 = CheckGradient(cube, x, g, fine).max_abs_error;
  CHECK(e1 == doctest::Approx(1e-2 / 3.0).epsilon(0.05));
  CHECK(e2 < e1 / 50.0);
}

TEST_CASE("points whose signature changes are skipped") {
  auto abs_sum = [](const Tensor& x) {
    Evaluation e;
    for (float v : x.data()) {
      e.value += std::abs(v);
      e.signature.push_back(v > 0 ? 1 : 0);
    }
    return e;
  };
  const Tensor x = Tensor::FromData({3}, {0.001f, 1.0f, -1.0f});
  const Tensor g = Tensor::FromData({3}, {1.0f, 1.0f, -1.0f});
  const GradCheckReport r = CheckGradient(abs_sum, x, g, GradCheckOptions{});
  CHECK(r.probed == 3);
  CHECK(r.skipped == 1);
  CHECK(r.Passed(1e-5));
  CHECK(r.unskipped_fraction() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("non-finite objectives raise a numeric error") {
  auto bad = [](const Tensor&) { return Evaluation{NAN, {}}; };
  CHECK_THROWS_AS(CheckGradient(bad, Tensor::Zeros({2}), Tensor::Zeros({2}),
                                GradCheckOptions{}),
                  NumericError);
}

TEST_CASE("gradcheck validates its inputs") {
  GradCheckOptions o;
  o.step = 0.0;
  CHECK_THROWS(CheckGradient(Sum, Tensor::Zeros({2}), Tensor::Zeros({2}), o));
  CHECK_THROWS_AS(CheckGradient(Sum, Tensor::Zeros({2}), Tensor::Zeros({3}),
                                GradCheckOptions{}),
                  ShapeError);
}

TEST_CASE("probe indices are distinct, sorted and seeded") {
  const auto a = SampleProbeIndices(1000, 64, 5);
  const auto b = SampleProbeIndices(1000, 64, 5);
  CHECK(a == b);
  CHECK(a.size() == 64);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1] < a[i]);
  CHECK(SampleProbeIndices(10, 64, 5).size() == 10);
  CHECK(SampleProbeIndices(1000, 64, 6) != a);
}

TEST_CASE("every backward pass passes its gradient check") {
  for (CheckedOp op : {CheckedOp::kRoiPool, CheckedOp::kRoiAlign,
                       CheckedOp::kMineFeatures, CheckedOp::kMineScorer,
                       CheckedOp::kMultitaskLoss}) {
    CAPTURE(CheckedOpName(op));
    std::size_t probed = 0;
    std::size_t skipped = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      GradCheckOptions o;
      o.seed = seed;
      o.probes = OpCheckInputSize(op, seed);
      const GradCheckReport r = CheckOpGradient(op, seed, o);
      CHECK(r.max_rel_error <= 1e-3);
      probed += r.probed;
      skipped += r.skipped;
    }
    CHECK(static_cast<double>(probed - skipped) / probed >= 0.95);
  }
  CHECK(ParseCheckedOp("ctxmine-scorer") == CheckedOp::kMineScorer);
  CHECK_FALSE(ParseCheckedOp("conv").has_value());
}

}  // namespace
}  // namespace actx
