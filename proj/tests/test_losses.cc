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
#include <vector>

#include "actx/error.h"
#include "actx/losses.h"
#include "doctest.h"
#include "test_util.h"

namespace actx {
namespace {

// -log of the directly exponentiated softmax.
double NaiveCrossEntropy(const std::vector<float>& logits, int label) {
  double z = 0.0;
  for (float v : logits) z += std::exp(static_cast<double>(v));
  return -std::log(std::exp(static_cast<double>(logits[label])) / z);
}

double NaiveSmoothL1(double x) {
  return std::abs(x) < 1 ? 0.5 * x * x : std::abs(x) - 0.5;
}

LabeledSample Background(std::vector<float> logits) {
  LabeledSample s;
  s.logits = std::move(logits);
  return s;
}

LabeledSample Positive(int label, std::vector<float> logits,
                       RegressionTarget pred, RegressionTarget target) {
  LabeledSample s;
  s.label = label;
  s.logits = std::move(logits);
  s.predicted = {pred};
  s.target = target;
  return s;
}

TEST_CASE("uniform logits over 21 classes cost ln 21") {
  const LabeledSample s = Background(std::vector<float>(21, 0.3f));
  CHECK(std::abs(ClsLoss(s) - std::log(21.0)) <= 1e-5);
}

TEST_CASE("a strongly peaked correct logit costs almost nothing") {
  std::vector<float> logits(5, 0.0f);
  logits[2] = 60.0f;
  CHECK(SoftmaxCrossEntropy(logits, 2) < 1e-20);
  CHECK(SoftmaxCrossEntropy(logits, 0) == doctest::Approx(60.0));
}

TEST_CASE("cross entropy matches the naive softmax") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<float> logits(1 + rng.Below(21));
    for (float& v : logits) v = static_cast<float>(rng.Uniform(-5, 5));
    const int label = static_cast<int>(rng.Below(logits.size()));
    CHECK(SoftmaxCrossEntropy(logits, label) ==
          doctest::Approx(NaiveCrossEntropy(logits, label)).epsilon(1e-12));
  }
}

TEST_CASE("cross entropy is stable for huge logits") {
  const std::vector<float> logits = {1e30f, -1e30f, 0.0f};
  CHECK(std::isfinite(SoftmaxCrossEntropy(logits, 1)));
  CHECK(SoftmaxCrossEntropy(logits, 0) == 0.0);
}

TEST_CASE("smooth l1 values and knee") {
  CHECK(SmoothL1(0.0) == 0.0);
  CHECK(SmoothL1(0.5) == 0.125);
  CHECK(SmoothL1(2.0) == 1.5);
  CHECK(SmoothL1(-2.0) == 1.5);
  const double e = 1e-9;
  CHECK(SmoothL1(1.0 - e) == doctest::Approx(SmoothL1(1.0 + e)).epsilon(1e-8));
  const double slope_in = (SmoothL1(1.0 - e) - SmoothL1(1.0 - 2 * e)) / e;
  const double slope_out = (SmoothL1(1.0 + 2 * e) - SmoothL1(1.0 + e)) / e;
  CHECK(slope_in == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(slope_out == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(SmoothL1Grad(0.3) == 0.3);
  CHECK(SmoothL1Grad(-7.0) == -1.0);
}

TEST_CASE("an all-background batch has exactly zero regression part") {
  Rng rng(62);
  std::vector<LabeledSample> batch;
  for (int i = 0; i < 16; ++i) {
    LabeledSample s = Background({static_cast<float>(rng.Normal()),
                                  static_cast<float>(rng.Normal())});
    s.predicted = {RegressionTarget{5, -5, 3, 2}};
    batch.push_back(s);
  }
  const LossParts parts = MultitaskLoss(batch, 10.0, 16, 16);
  CHECK(parts.reg == 0.0);
  CHECK(parts.total == parts.cls);
  for (const SampleGradient& g : LossBackward(batch, 10.0, 16, 16)) {
    for (std::size_t k = 0; k < 4; ++k) CHECK(g.predicted[0][k] == 0.0f);
  }
}

TEST_CASE("a perfect positive costs almost nothing") {
  const RegressionTarget t{0.1f, -0.2f, 0.3f, 0.05f};
  const std::vector<LabeledSample> batch = {Positive(1, {-50.0f, 50.0f}, t, t)};
  const LossParts parts = MultitaskLoss(batch, 1.0, 1, 1);
  CHECK(parts.reg == 0.0);
  CHECK(parts.total < 1e-30);
  const auto g = LossBackward(batch, 1.0, 1, 1);
  CHECK(std::abs(g[0].logits[0]) < 1e-30);
  CHECK(g[0].predicted[0] == RegressionTarget{});
}

TEST_CASE("multitask loss matches a hand-summed oracle") {
  Rng rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LabeledSample> batch;
    double cls = 0.0;
    double reg = 0.0;
    const auto n = 1 + rng.Below(12);
    for (std::uint64_t j = 0; j < n; ++j) {
      std::vector<float> logits(4);
      for (float& v : logits) v = static_cast<float>(rng.Uniform(-3, 3));
      const int label = static_cast<int>(rng.Below(4));
      LabeledSample s;
      s.label = label;
      s.logits = logits;
      cls += NaiveCrossEntropy(logits, label);
      if (label >= 1) {
        RegressionTarget t;
        // Per-class predictions on odd samples, agnostic on even ones.
        std::vector<RegressionTarget> pred(j % 2 == 1 ? 4 : 1);
        for (auto& p : pred) {
          for (std::size_t k = 0; k < 4; ++k) {
            p[k] = static_cast<float>(rng.Uniform(-2, 2));
          }
        }
        for (std::size_t k = 0; k < 4; ++k) {
          t[k] = static_cast<float>(rng.Uniform(-2, 2));
        }
        const RegressionTarget& used = pred.size() == 1 ? pred[0] : pred[label];
        for (std::size_t k = 0; k < 4; ++k) {
          reg += NaiveSmoothL1(double(used[k]) - double(t[k]));
        }
        s.predicted = pred;
        s.target = t;
      }
      batch.push_back(s);
    }
    const double lambda = rng.Uniform(0.5, 3);
    const double n_cls = static_cast<double>(n);
    const double n_reg = rng.Uniform(1, 10);
    const LossParts parts = MultitaskLoss(batch, lambda, n_cls, n_reg);
    CHECK(parts.cls == doctest::Approx(cls / n_cls).epsilon(1e-12));
    CHECK(parts.reg == doctest::Approx(lambda * reg / n_reg).epsilon(1e-12));
    CHECK(parts.total == doctest::Approx(cls / n_cls + lambda * reg / n_reg));
  }
}

TEST_CASE("malformed samples are rejected") {
  CHECK_THROWS(ClsLoss(Background({})));
  LabeledSample out_of_range = Background({0, 0});
  out_of_range.label = 2;
  CHECK_THROWS(ClsLoss(out_of_range));
  LabeledSample no_target = Background({0, 0});
  no_target.label = 1;
  no_target.predicted = {RegressionTarget{}};
  CHECK_THROWS(ClsLoss(no_target));
  LabeledSample bg_target = Background({0, 0});
  bg_target.target = RegressionTarget{};
  CHECK_THROWS(ClsLoss(bg_target));
  LabeledSample bad_count =
      Positive(1, {0, 0, 0}, RegressionTarget{}, RegressionTarget{});
  bad_count.predicted.resize(2);
  CHECK_THROWS(ClsLoss(bad_count));
  CHECK_THROWS_AS(ClsLoss(Background({0, NAN})), NumericError);
  const std::vector<LabeledSample> ok = {Background({0, 0})};
  CHECK_THROWS(MultitaskLoss(ok, 1.0, 0.0, 1.0));
}

TEST_CASE("loss gradient is (softmax - onehot) / n_cls and clamp * lambda / n_reg") {
  const RegressionTarget pred{0.5f, 3.0f, -2.0f, 0.0f};
  const RegressionTarget target{0.0f, 0.0f, 0.0f, 0.25f};
  const std::vector<LabeledSample> batch = {Positive(1, {0.0f, 0.0f}, pred, target)};
  const auto g = LossBackward(batch, 2.0, 4.0, 8.0);
  CHECK(g[0].logits[0] == doctest::Approx(0.5 / 4.0));
  CHECK(g[0].logits[1] == doctest::Approx(-0.5 / 4.0));
  CHECK(g[0].predicted[0][0] == doctest::Approx(0.5 * 2.0 / 8.0));
  CHECK(g[0].predicted[0][1] == doctest::Approx(1.0 * 2.0 / 8.0));
  CHECK(g[0].predicted[0][2] == doctest::Approx(-1.0 * 2.0 / 8.0));
  CHECK(g[0].predicted[0][3] == doctest::Approx(-0.25 * 2.0 / 8.0));
}

}  // namespace
}  // namespace actx
