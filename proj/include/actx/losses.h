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

#ifndef ACTX_LOSSES_H_
#define ACTX_LOSSES_H_

#include <optional>
#include <span>
#include <vector>

#include "actx/geometry.h"

namespace actx {

// One anchor (RPN, label in {0, 1}) or one object RoI (head, label in
// [0, L]). Label 0 is background.
struct LabeledSample {
  int label = 0;
  std::vector<float> logits;  // L + 1 entries
  // Either a single class-agnostic prediction or one per class (L + 1),
  // selected by `label`. May be empty for background samples.
  std::vector<RegressionTarget> predicted;
  // Present iff label >= 1.
  std::optional<RegressionTarget> target;
};

// Throws Error on a malformed sample (label out of range, target presence
// not matching the label, bad prediction count) and NumericError on
// non-finite logits.
void ValidateSample(const LabeledSample& s);

// -log softmax(logits)[label], via log-sum-exp.
double SoftmaxCrossEntropy(std::span<const float> logits, int label);
// softmax(logits) - onehot(label).
std::vector<double> SoftmaxCrossEntropyGrad(std::span<const float> logits,
                                            int label);

double ClsLoss(const LabeledSample& s);

double SmoothL1(double x);
double SmoothL1Grad(double x);

struct LossParts {
  double total = 0.0;
  double cls = 0.0;
  double reg = 0.0;  // already multiplied by lambda / n_reg
};

// (1/n_cls) sum_j cls_j + lambda (1/n_reg) sum_j [l_j >= 1] sum_c
// smoothL1(t_jc - t*_jc).
LossParts MultitaskLoss(std::span<const LabeledSample> samples, double lambda,
                        double n_cls, double n_reg);

struct SampleGradient {
  std::vector<float> logits;
  std::vector<RegressionTarget> predicted;  // same layout as the sample's
};

// Gradient of MultitaskLoss(...).total with respect to every sample's logits
// and predicted deltas.
std::vector<SampleGradient> LossBackward(std::span<const LabeledSample> samples,
                                         double lambda, double n_cls,
                                         double n_reg);

}  // namespace actx

#endif  // ACTX_LOSSES_H_
