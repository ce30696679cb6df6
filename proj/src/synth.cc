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

#include "actx/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "actx/attacks.h"
#include "actx/error.h"
#include "actx/losses.h"
#include "actx/rng.h"

namespace actx {
namespace {

constexpr int kClasses = 2;

void AddToRect(Tensor& f, std::int64_t channel, const PixelRect& r,
               float value) {
  const std::int64_t h = f.dim(1);
  const std::int64_t w = f.dim(2);
  const PixelRect c = ClipRect(r, h, w);
  for (std::int64_t y = c.y0; y < c.y1; ++y) {
    for (std::int64_t x = c.x0; x < c.x1; ++x) {
      f[static_cast<std::size_t>((channel * h + y) * w + x)] += value;
    }
  }
}

SynthScene MakeScene(Rng rng, int label, const SynthConfig& cfg) {
  SynthScene s;
  s.label = label;
  s.features = Tensor::Zeros({cfg.depth, cfg.height, cfg.width});
  for (float& v : s.features.data()) {
    v = static_cast<float>(cfg.noise_sigma * rng.Normal());
  }

  const double rw = rng.Uniform(cfg.roi_min, cfg.roi_max);
  const double rh = rng.Uniform(cfg.roi_min, cfg.roi_max);
  const double x1 = rng.Uniform(rw, static_cast<double>(cfg.width) - 2.0 * rw);
  const double y1 = rng.Uniform(rh, static_cast<double>(cfg.height) - 2.0 * rh);
  s.object_roi = {x1, y1, x1 + rw, y1 + rh};

  const PixelRect interior = PixelsOf(s.object_roi);
  for (std::int64_t c = 0; c < cfg.depth; ++c) {
    AddToRect(s.features, c, interior,
              static_cast<float>(cfg.interior_offset));
  }

  const ContextLayout layout = BuildLayout(s.object_roi);
  s.blob_cell = kDirections[rng.Below(kNumCells)];
  const Box& cell = layout.cell(s.blob_cell);
  const double cx =
      cell.center_x() + rng.Uniform(-cfg.blob_offset, cfg.blob_offset) * rw;
  const double cy =
      cell.center_y() + rng.Uniform(-cfg.blob_offset, cfg.blob_offset) * rh;
  PixelRect blob = PixelsOf(Box::FromCenter(cx, cy, cfg.blob_fraction * rw,
                                            cfg.blob_fraction * rh));
  if (blob.width() == 0) blob.x1 = blob.x0 + 1;
  if (blob.height() == 0) blob.y1 = blob.y0 + 1;
  s.blob = blob.AsBox();
  AddToRect(s.features, label, blob, static_cast<float>(cfg.blob_amplitude));
  if (cfg.marker_channel >= 0) {
    AddToRect(s.features, cfg.marker_channel, blob,
              static_cast<float>(cfg.marker_amplitude));
  }
  return s;
}

struct LinearHead {
  std::vector<float> weights;  // kClasses x n
  std::vector<float> bias;

  explicit LinearHead(std::size_t n)
      : weights(kClasses * n, 0.0f), bias(kClasses, 0.0f) {}

  std::vector<float> Logits(const Tensor& x) const {
    const std::size_t n = x.numel();
    std::vector<float> out(kClasses);
    for (int k = 0; k < kClasses; ++k) {
      double acc = bias[k];
      const float* w = weights.data() + k * n;
      for (std::size_t e = 0; e < n; ++e) {
        acc += static_cast<double>(w[e]) * x[e];
      }
      out[k] = static_cast<float>(acc);
    }
    return out;
  }
};

int Argmax(const std::vector<float>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

std::vector<SynthScene> GenerateScenes(std::uint64_t seed, std::size_t n,
                                       const SynthConfig& config) {
  if (n < 1) throw Error("scene count must be >= 1");
  if (config.depth < 2) throw Error("synthetic scenes need depth >= 2");
  if (config.marker_channel >= config.depth ||
      (config.marker_channel >= 0 && config.marker_channel < 2)) {
    throw Error("marker channel must be a non-class channel below depth");
  }
  if (config.width < 3.0 * config.roi_max ||
      config.height < 3.0 * config.roi_max) {
    throw Error("feature map too small for the 3x3 layout");
  }
  const Rng root(seed);
  std::vector<SynthScene> scenes;
  scenes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng stream = root.Fork(i);
    const std::uint64_t scene_seed = stream.NextU64();
    scenes.push_back(MakeScene(Rng(scene_seed), static_cast<int>(i % 2), config));
    scenes.back().seed = scene_seed;
  }
  return scenes;
}

MiningConfig DefaultSynthMining() {
  MiningConfig m;
  m.roi.pooled_h = 4;
  m.roi.pooled_w = 4;
  return m;
}

std::string_view HeadVariantName(HeadVariant v) {
  switch (v) {
    case HeadVariant::kNone: return "none";
    case HeadVariant::kNeighbor8: return "neigh8";
    case HeadVariant::kMining: return "mining";
  }
  return "?";
}

std::optional<HeadVariant> ParseHeadVariant(std::string_view name) {
  for (auto v : {HeadVariant::kNone, HeadVariant::kNeighbor8,
                 HeadVariant::kMining}) {
    if (HeadVariantName(v) == name) return v;
  }
  return std::nullopt;
}

TrainResult TrainHead(std::span<const SynthScene> scenes, HeadVariant variant,
                      const TrainConfig& config) {
  if (scenes.empty()) throw Error("no scenes to train on");
  const std::size_t n_train = std::clamp<std::size_t>(
      static_cast<std::size_t>(config.train_fraction * scenes.size()), 1,
      scenes.size());
  const auto train = scenes.first(n_train);
  const auto test =
      n_train < scenes.size() ? scenes.subspan(n_train) : scenes.first(n_train);

  const RoiOpConfig& roi = config.mining.roi;
  const std::int64_t depth = scenes.front().features.dim(0);
  TrainResult result;
  result.train_count = train.size();
  result.test_count = test.size();
  result.scorer = ContextScorer::Zeros(depth, roi.pooled_h, roi.pooled_w);

  // Fixed variants do not change during training.
  std::vector<Tensor> cached;
  if (variant != HeadVariant::kMining) {
    const ContextVariant cv = variant == HeadVariant::kNone
                                  ? ContextVariant::kNone
                                  : ContextVariant::kNeighbor8;
    cached.reserve(scenes.size());
    for (const SynthScene& s : scenes) {
      cached.push_back(
          FixedContextVariant(s.features, s.object_roi, cv, roi).feature);
    }
  }
  const std::size_t n_features =
      variant == HeadVariant::kMining
          ? static_cast<std::size_t>((kNumCells + 1) * depth * roi.pooled_h *
                                     roi.pooled_w)
          : cached.front().numel();
  LinearHead head(n_features);

  Rng rng(config.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.Below(i)]);
    }
    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      const SynthScene& s = train[idx];
      std::optional<MinedRoIFeature> mined;
      if (variant == HeadVariant::kMining) {
        mined = MineContext(s.features, s.object_roi, result.scorer,
                            config.mining);
      }
      const Tensor& x = mined ? mined->feature : cached[idx];

      const std::vector<float> logits = head.Logits(x);
      const double loss = SoftmaxCrossEntropy(logits, s.label);
      if (!std::isfinite(loss)) {
        throw TrainingError("non-finite loss in epoch " +
                            std::to_string(epoch));
      }
      loss_sum += loss;
      const std::vector<double> g = SoftmaxCrossEntropyGrad(logits, s.label);

      if (mined) {
        Tensor grad_x = Tensor::Zeros(x.dims());
        for (int k = 0; k < kClasses; ++k) {
          const float* w = head.weights.data() + k * n_features;
          for (std::size_t e = 0; e < n_features; ++e) {
            grad_x[e] += static_cast<float>(g[k]) * w[e];
          }
        }
        const MiningGradients mg = MineContextBackward(
            grad_x, *mined, s.features.dims(), result.scorer);
        for (std::size_t e = 0; e < result.scorer.weights.size(); ++e) {
          result.scorer.weights[e] -=
              static_cast<float>(config.scorer_lr * mg.grad_weights[e]);
        }
        result.scorer.bias -= static_cast<float>(config.scorer_lr * mg.grad_bias);
      }
      for (int k = 0; k < kClasses; ++k) {
        float* w = head.weights.data() + k * n_features;
        const auto step = static_cast<float>(config.lr * g[k]);
        for (std::size_t e = 0; e < n_features; ++e) w[e] -= step * x[e];
        head.bias[k] -= step;
      }
    }
    const double mean = loss_sum / static_cast<double>(order.size());
    if (!std::isfinite(mean)) {
      throw TrainingError("non-finite loss in epoch " + std::to_string(epoch));
    }
    result.loss_trace.push_back(mean);
  }

  std::size_t correct = 0;
  std::size_t overlaps = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const SynthScene& s = test[i];
    if (variant == HeadVariant::kMining) {
      const MinedRoIFeature mined =
          MineContext(s.features, s.object_roi, result.scorer, config.mining);
      if (Argmax(head.Logits(mined.feature)) == s.label) ++correct;
      const MinedContext& sel =
          mined.selected[static_cast<std::size_t>(s.blob_cell)];
      if (!sel.fallback && IntersectionArea(sel.clipped, s.blob) > 0.0) {
        ++overlaps;
      }
    } else {
      const Tensor& x = cached[n_train < scenes.size() ? n_train + i : i];
      if (Argmax(head.Logits(x)) == s.label) ++correct;
    }
  }
  result.accuracy = static_cast<double>(correct) / test.size();
  if (variant == HeadVariant::kMining) {
    result.selection_overlap = static_cast<double>(overlaps) / test.size();
  }
  return result;
}

}  // namespace actx
