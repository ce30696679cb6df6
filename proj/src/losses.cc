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

#include "actx/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "actx/error.h"

namespace actx {
namespace {

std::size_t PredictionIndex(const LabeledSample& s) {
  return s.predicted.size() == 1 ? 0 : static_cast<std::size_t>(s.label);
}

void CheckCounts(double n_cls, double n_reg) {
  if (!(n_cls >= 1.0) || !(n_reg >= 1.0)) {
    throw Error("N_cls and N_reg must be >= 1");
  }
}

double LogSumExp(std::span<const float> logits) {
  double m = logits.front();
  for (float v : logits) m = std::max(m, static_cast<double>(v));
  double acc = 0.0;
  for (float v : logits) acc += std::exp(static_cast<double>(v) - m);
  return m + std::log(acc);
}

}  // namespace

void ValidateSample(const LabeledSample& s) {
  if (s.logits.empty()) throw Error("sample has no logits");
  for (float v : s.logits) {
    if (!std::isfinite(v)) throw NumericError("non-finite logit");
  }
  if (s.label < 0 || static_cast<std::size_t>(s.label) >= s.logits.size()) {
    throw Error("label " + std::to_string(s.label) + " outside [0, " +
                std::to_string(s.logits.size() - 1) + "]");
  }
  if (s.target.has_value() != (s.label >= 1)) {
    throw Error("regression target must be present exactly for positives");
  }
  if (s.label >= 1 && s.predicted.size() != 1 &&
      s.predicted.size() != s.logits.size()) {
    throw Error("expected 1 or " + std::to_string(s.logits.size()) +
                " predicted regression vectors, got " +
                std::to_string(s.predicted.size()));
  }
}

double SoftmaxCrossEntropy(std::span<const float> logits, int label) {
  if (logits.empty() || label < 0 ||
      static_cast<std::size_t>(label) >= logits.size()) {
    throw Error("label outside the logit range");
  }
  return LogSumExp(logits) -
         static_cast<double>(logits[static_cast<std::size_t>(label)]);
}

std::vector<double> SoftmaxCrossEntropyGrad(std::span<const float> logits,
                                            int label) {
  if (logits.empty() || label < 0 ||
      static_cast<std::size_t>(label) >= logits.size()) {
    throw Error("label outside the logit range");
  }
  const double lse = LogSumExp(logits);
  std::vector<double> g(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    g[k] = std::exp(static_cast<double>(logits[k]) - lse);
  }
  g[static_cast<std::size_t>(label)] -= 1.0;
  return g;
}

double ClsLoss(const LabeledSample& s) {
  ValidateSample(s);
  return SoftmaxCrossEntropy(s.logits, s.label);
}

double SmoothL1(double x) {
  const double a = std::abs(x);
  return a < 1.0 ? 0.5 * x * x : a - 0.5;
}

double SmoothL1Grad(double x) { return std::clamp(x, -1.0, 1.0); }

LossParts MultitaskLoss(std::span<const LabeledSample> samples, double lambda,
                        double n_cls, double n_reg) {
  CheckCounts(n_cls, n_reg);
  double cls_sum = 0.0;
  double reg_sum = 0.0;
  for (const LabeledSample& s : samples) {
    cls_sum += ClsLoss(s);
    if (s.label < 1) continue;
    const RegressionTarget& t = s.predicted[PredictionIndex(s)];
    for (std::size_t c = 0; c < 4; ++c) {
      reg_sum += SmoothL1(static_cast<double>(t[c]) -
                          static_cast<double>((*s.target)[c]));
    }
  }
  LossParts parts;
  parts.cls = cls_sum / n_cls;
  parts.reg = lambda * reg_sum / n_reg;
  parts.total = parts.cls + parts.reg;
  return parts;
}

std::vector<SampleGradient> LossBackward(std::span<const LabeledSample> samples,
                                         double lambda, double n_cls,
                                         double n_reg) {
  CheckCounts(n_cls, n_reg);
  std::vector<SampleGradient> grads;
  grads.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    ValidateSample(s);
    SampleGradient g;
    const std::vector<double> dl = SoftmaxCrossEntropyGrad(s.logits, s.label);
    g.logits.resize(dl.size());
    for (std::size_t k = 0; k < dl.size(); ++k) {
      g.logits[k] = static_cast<float>(dl[k] / n_cls);
    }
    g.predicted.assign(s.predicted.size(), RegressionTarget{});
    if (s.label >= 1) {
      const std::size_t idx = PredictionIndex(s);
      for (std::size_t c = 0; c < 4; ++c) {
        const double diff = static_cast<double>(s.predicted[idx][c]) -
                            static_cast<double>((*s.target)[c]);
        g.predicted[idx][c] =
            static_cast<float>(SmoothL1Grad(diff) * lambda / n_reg);
      }
    }
    grads.push_back(std::move(g));
  }
  return grads;
}

}  // namespace actx
