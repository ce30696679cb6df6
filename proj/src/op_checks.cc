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


#include "actx/op_checks.h"

#include <functional>
#include <vector>

#include "actx/ctx_mining.h"
#include "actx/error.h"
#include "actx/losses.h"
#include "actx/rng.h"
#include "actx/roi_ops.h"

namespace actx {
namespace {

struct Problem {
  Tensor x;
  Objective f;
  std::function<Tensor(const Tensor&)> gradient;
};

Tensor RandomTensor(Rng& rng, const Shape& dims, double lo, double hi) {
  Tensor t = Tensor::Zeros(dims);
  for (float& v : t.data()) v = static_cast<float>(rng.Uniform(lo, hi));
  return t;
}

Box RandomBox(Rng& rng, double size_lo, double size_hi, double extent_w,
              double extent_h) {
  const double w = rng.Uniform(size_lo, size_hi);
  const double h = rng.Uniform(size_lo, size_hi);
  const double x1 = rng.Uniform(0.0, extent_w - w);
  const double y1 = rng.Uniform(0.0, extent_h - h);
  return {x1, y1, x1 + w, y1 + h};
}

double Dot(const Tensor& c, const Tensor& t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < t.numel(); ++i) {
    acc += static_cast<double>(c[i]) * t[i];
  }
  return acc;
}

Problem RoiProblem(Rng& rng, bool align) {
  const Shape dims = {2, 16, 16};
  const Box roi = RandomBox(rng, 3.0, 12.0, 16.0, 16.0);
  const std::int64_t ph = 7;
  const std::int64_t pw = 7;
  Problem p;
  p.x = RandomTensor(rng, dims, -1.0, 1.0);
  auto c = std::make_shared<Tensor>(RandomTensor(rng, {2, ph, pw}, -1.0, 1.0));
  auto run = [=](const Tensor& f) {
    return align ? RoiAlign(f, roi, ph, pw) : RoiPool(f, roi, ph, pw);
  };
  p.f = [=](const Tensor& f) {
    const RoIMap m = run(f);
    return Evaluation{Dot(*c, m.data), m.argmax};
  };
  p.gradient = [=](const Tensor& f) {
    return ExtractRoiBackward(*c, run(f), dims);
  };
  return p;
}

struct MineSetup {
  Shape dims = {2, 24, 24};
  Box object;
  MiningConfig config;
  std::size_t n = 0;
};

MineSetup MakeMineSetup(Rng& rng, bool coarse_grid) {
  MineSetup s;
  if (coarse_grid) {
    // A weight step moves every candidate's score at once; with the default
    // grid neighbors differ so little that most steps flip a selection.
    s.config.grid.center_offsets = {-0.25, 0.0, 0.25};
    s.config.grid.size_scales = {1.0 / 3.0, 2.0 / 3.0};
  }
  s.object = RandomBox(rng, 4.0, 8.0, 24.0, 24.0);
  s.config.roi.pooled_h = 4;
  s.config.roi.pooled_w = 4;
  s.n = static_cast<std::size_t>(s.dims[0] * 16);
  return s;
}

std::vector<std::int64_t> MineSignature(const MinedRoIFeature& m) {
  std::vector<std::int64_t> sig;
  for (const MinedContext& c : m.selected) sig.push_back(c.candidate_index);
  sig.insert(sig.end(), m.object_map.argmax.begin(), m.object_map.argmax.end());
  for (const MinedContext& c : m.selected) {
    sig.insert(sig.end(), c.map.argmax.begin(), c.map.argmax.end());
  }
  return sig;
}

Problem MineProblem(Rng& rng, bool wrt_scorer) {
  const MineSetup s = MakeMineSetup(rng, wrt_scorer);
  const Tensor features = RandomTensor(rng, s.dims, -1.0, 1.0);
  // Large enough that selections are stable under a weight step, small
  // enough that the gate stays away from tanh saturation.
  const double weight_scale = wrt_scorer ? 0.3 : 0.1;
  ContextScorer scorer;
  scorer.weights.resize(s.n);
  for (float& w : scorer.weights) w = static_cast<float>(weight_scale * rng.Normal());
  scorer.bias = static_cast<float>(weight_scale * rng.Normal());
  const Shape out_dims = {9 * s.dims[0], 4, 4};
  auto c = std::make_shared<Tensor>(RandomTensor(rng, out_dims, -1.0, 1.0));

  Problem p;
  if (!wrt_scorer) {
    p.x = features;
    p.f = [=](const Tensor& f) {
      const MinedRoIFeature m = MineContext(f, s.object, scorer, s.config);
      return Evaluation{Dot(*c, m.feature), MineSignature(m)};
    };
    p.gradient = [=](const Tensor& f) {
      const MinedRoIFeature m = MineContext(f, s.object, scorer, s.config);
      return MineContextBackward(*c, m, s.dims, scorer).grad_features;
    };
  } else {
    p.x = scorer.ToTensor();
    p.f = [=](const Tensor& w) {
      const MinedRoIFeature m = MineContext(
          features, s.object, ContextScorer::FromTensor(w, s.n), s.config);
      return Evaluation{Dot(*c, m.feature), MineSignature(m)};
    };
    p.gradient = [=](const Tensor& w) {
      const ContextScorer sc = ContextScorer::FromTensor(w, s.n);
      const MinedRoIFeature m = MineContext(features, s.object, sc, s.config);
      const MiningGradients g = MineContextBackward(*c, m, s.dims, sc);
      Tensor out = Tensor::Zeros({static_cast<std::int64_t>(s.n + 1)});
      for (std::size_t i = 0; i < s.n; ++i) out[i] = g.grad_weights[i];
      out[s.n] = static_cast<float>(g.grad_bias);
      return out;
    };
  }
  return p;
}

// Flat layout per sample: L + 1 logits, then the 4 predicted deltas.
constexpr int kLossClasses = 5;
constexpr int kLossSamples = 8;
constexpr int kLossStride = kLossClasses + 4;
constexpr double kLossLambda = 1.0;

Problem LossProblem(Rng& rng) {
  std::vector<LabeledSample> base(kLossSamples);
  for (int j = 0; j < kLossSamples; ++j) {
    LabeledSample& s = base[j];
    s.label = j % 2 == 0 ? 0 : 1 + static_cast<int>(rng.Below(kLossClasses - 1));
    if (s.label >= 1) {
      RegressionTarget t;
      for (std::size_t k = 0; k < 4; ++k) {
        t[k] = static_cast<float>(rng.Normal());
      }
      s.target = t;
    }
  }
  Problem p;
  p.x = RandomTensor(rng, {kLossSamples * kLossStride}, -2.0, 2.0);
  auto unpack = [base](const Tensor& x) {
    std::vector<LabeledSample> samples = base;
    for (int j = 0; j < kLossSamples; ++j) {
      const std::size_t o = static_cast<std::size_t>(j * kLossStride);
      samples[j].logits.assign(x.raw() + o, x.raw() + o + kLossClasses);
      RegressionTarget t;
      for (std::size_t k = 0; k < 4; ++k) t[k] = x[o + kLossClasses + k];
      samples[j].predicted = {t};
    }
    return samples;
  };
  p.f = [=](const Tensor& x) {
    const std::vector<LabeledSample> samples = unpack(x);
    Evaluation e;
    e.value = MultitaskLoss(samples, kLossLambda, kLossSamples, kLossSamples)
                  .total;
    // Smooth L1 switches branch at |d| = 1.
    for (const LabeledSample& s : samples) {
      if (!s.target) continue;
      for (std::size_t k = 0; k < 4; ++k) {
        const double d = static_cast<double>(s.predicted[0][k]) - (*s.target)[k];
        e.signature.push_back(d < -1.0 ? -1 : (d > 1.0 ? 1 : 0));
      }
    }
    return e;
  };
  p.gradient = [=](const Tensor& x) {
    const std::vector<LabeledSample> samples = unpack(x);
    const std::vector<SampleGradient> g =
        LossBackward(samples, kLossLambda, kLossSamples, kLossSamples);
    Tensor out = Tensor::Zeros(x.dims());
    for (int j = 0; j < kLossSamples; ++j) {
      const std::size_t o = static_cast<std::size_t>(j * kLossStride);
      for (int k = 0; k < kLossClasses; ++k) out[o + k] = g[j].logits[k];
      if (!g[j].predicted.empty()) {
        for (std::size_t k = 0; k < 4; ++k) {
          out[o + kLossClasses + k] = g[j].predicted[0][k];
        }
      }
    }
    return out;
  };
  return p;
}

Problem MakeProblem(CheckedOp op, std::uint64_t seed) {
  Rng rng = Rng(seed).Fork(static_cast<std::uint64_t>(op));
  switch (op) {
    case CheckedOp::kRoiPool: return RoiProblem(rng, false);
    case CheckedOp::kRoiAlign: return RoiProblem(rng, true);
    case CheckedOp::kMineFeatures: return MineProblem(rng, false);
    case CheckedOp::kMineScorer: return MineProblem(rng, true);
    case CheckedOp::kMultitaskLoss: return LossProblem(rng);
  }
  throw Error("unknown checked op");
}

constexpr CheckedOp kAllOps[] = {CheckedOp::kRoiPool, CheckedOp::kRoiAlign,
                                 CheckedOp::kMineFeatures,
                                 CheckedOp::kMineScorer,
                                 CheckedOp::kMultitaskLoss};

}  // namespace

std::string_view CheckedOpName(CheckedOp op) {
  switch (op) {
    case CheckedOp::kRoiPool: return "roipool";
    case CheckedOp::kRoiAlign: return "roialign";
    case CheckedOp::kMineFeatures: return "ctxmine";
    case CheckedOp::kMineScorer: return "ctxmine-scorer";
    case CheckedOp::kMultitaskLoss: return "loss";
  }
  return "?";
}

std::optional<CheckedOp> ParseCheckedOp(std::string_view name) {
  for (CheckedOp op : kAllOps) {
    if (CheckedOpName(op) == name) return op;
  }
  return std::nullopt;
}

GradCheckReport CheckOpGradient(CheckedOp op, std::uint64_t seed,
                                const GradCheckOptions& options) {
  const Problem p = MakeProblem(op, seed);
  return CheckGradient(p.f, p.x, p.gradient(p.x), options);
}

std::size_t OpCheckInputSize(CheckedOp op, std::uint64_t seed) {
  return MakeProblem(op, seed).x.numel();
}

}  // namespace actx
