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

#include "actx/ctx_mining.h"

#include <cmath>
#include <string>

#include "actx/error.h"

namespace actx {
namespace {

bool ShortEdgeOk(const Box& b, const Box& cell, const CandidateGridSpec& spec) {
  return b.short_edge() >= spec.min_short_ratio * cell.short_edge() *
                               (1.0 - kConstraintTolerance);
}

Tensor GateBlock(const Tensor& map, double gate) {
  if (gate == 1.0) return map;
  Tensor out = map;
  for (float& v : out.data()) v = static_cast<float>(gate * v);
  return out;
}

double CandidateScore(const Tensor& features, const Box& clipped,
                      const ContextScorer& scorer, const RoiOpConfig& roi) {
  if (roi.backbone == RoiBackbone::kPool) {
    return RoiPoolDot(features, clipped, roi.pooled_h, roi.pooled_w,
                      scorer.weights) +
           static_cast<double>(scorer.bias);
  }
  return scorer.Score(ExtractRoi(features, clipped, roi).data);
}

void CheckFeatureMap(const Tensor& features) {
  if (features.rank() != 3) {
    throw ShapeError("feature map must be D x H x W, got " +
                     ShapeToString(features.dims()));
  }
}

}  // namespace

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kLeftTop: return "left-top";
    case Direction::kTop: return "top";
    case Direction::kRightTop: return "right-top";
    case Direction::kLeft: return "left";
    case Direction::kRight: return "right";
    case Direction::kLeftBottom: return "left-bottom";
    case Direction::kBottom: return "bottom";
    case Direction::kRightBottom: return "right-bottom";
  }
  return "?";
}

int DirectionDx(Direction d) {
  switch (d) {
    case Direction::kLeftTop:
    case Direction::kLeft:
    case Direction::kLeftBottom: return -1;
    case Direction::kTop:
    case Direction::kBottom: return 0;
    default: return 1;
  }
}

int DirectionDy(Direction d) {
  switch (d) {
    case Direction::kLeftTop:
    case Direction::kTop:
    case Direction::kRightTop: return -1;
    case Direction::kLeft:
    case Direction::kRight: return 0;
    default: return 1;
  }
}

ContextLayout BuildLayout(const Box& object_roi, double anchor_scale) {
  if (!object_roi.has_positive_area()) {
    throw DegenerateRoiError("object roi must have positive width and height");
  }
  ContextLayout layout;
  layout.object_roi = object_roi;
  const double w = object_roi.width();
  const double h = object_roi.height();
  for (std::size_t k = 0; k < kNumCells; ++k) {
    const Direction d = kDirections[k];
    layout.cells[k] = object_roi.Translated(DirectionDx(d) * w,
                                            DirectionDy(d) * h);
    layout.anchors[k] = layout.cells[k].Scaled(anchor_scale);
  }
  return layout;
}

std::vector<Box> RawCandidates(const Box& cell, const CandidateGridSpec& spec) {
  std::vector<Box> out;
  out.reserve(spec.raw_count());
  const double cw = cell.width();
  const double ch = cell.height();
  const double cx = cell.center_x();
  const double cy = cell.center_y();
  for (double oy : spec.center_offsets) {
    for (double ox : spec.center_offsets) {
      for (double sh : spec.size_scales) {
        for (double sw : spec.size_scales) {
          out.push_back(
              Box::FromCenter(cx + ox * cw, cy + oy * ch, sw * cw, sh * ch));
        }
      }
    }
  }
  return out;
}

bool SatisfiesPoolConstraints(const Box& candidate, const Box& cell,
                              const Box& anchor,
                              const CandidateGridSpec& spec) {
  if (!ShortEdgeOk(candidate, cell, spec)) return false;
  if (candidate.long_edge() >
      spec.max_long_ratio * cell.long_edge() * (1.0 + kConstraintTolerance)) {
    return false;
  }
  return Iou(candidate, anchor) >= spec.min_anchor_iou - kConstraintTolerance;
}

namespace {

// Raw candidates reproduce b_0 up to rounding; those are not listed twice.
bool SameBox(const Box& a, const Box& b, const Box& cell) {
  const double tol = kConstraintTolerance * cell.long_edge();
  return std::abs(a.x1 - b.x1) <= tol && std::abs(a.y1 - b.y1) <= tol &&
         std::abs(a.x2 - b.x2) <= tol && std::abs(a.y2 - b.y2) <= tol;
}

}  // namespace

CandidatePool EnumerateCellCandidates(const Box& cell,
                                      const CandidateGridSpec& spec,
                                      std::optional<MapBounds> bounds) {
  if (!cell.has_positive_area()) {
    throw DegenerateRoiError("context cell must have positive size");
  }
  if (spec.center_offsets.empty() || spec.size_scales.empty()) {
    throw Error("candidate grid spec is empty");
  }
  CandidatePool pool;
  pool.cell = cell;
  pool.anchor = cell.Scaled(spec.anchor_scale);

  auto clip = [&](const Box& b) {
    return bounds ? Clip(b, bounds->width, bounds->height) : b;
  };
  const Box anchor_clipped = clip(pool.anchor);
  if (!anchor_clipped.has_positive_area()) return pool;
  pool.candidates.push_back({pool.anchor, anchor_clipped});

  for (const Box& b : RawCandidates(cell, spec)) {
    if (SameBox(b, pool.anchor, cell)) continue;
    if (!SatisfiesPoolConstraints(b, cell, pool.anchor, spec)) continue;
    const Box c = clip(b);
    if (!c.has_positive_area() || !ShortEdgeOk(c, cell, spec)) continue;
    pool.candidates.push_back({b, c});
  }
  return pool;
}

CandidatePool EnumerateCandidates(const ContextLayout& layout,
                                  Direction direction,
                                  const CandidateGridSpec& spec,
                                  std::optional<MapBounds> bounds) {
  return EnumerateCellCandidates(layout.cell(direction), spec, bounds);
}

ContextScorer ContextScorer::Zeros(std::int64_t depth, std::int64_t pooled_h,
                                   std::int64_t pooled_w) {
  ContextScorer s;
  s.weights.assign(static_cast<std::size_t>(depth * pooled_h * pooled_w), 0.0f);
  return s;
}

ContextScorer ContextScorer::FromTensor(const Tensor& t, std::size_t n) {
  if (t.rank() != 1 || (t.numel() != n && t.numel() != n + 1)) {
    throw ShapeError("scorer tensor must be a vector of length " +
                     std::to_string(n) + " or " + std::to_string(n + 1) +
                     ", got " + ShapeToString(t.dims()));
  }
  ContextScorer s;
  s.weights.assign(t.data().begin(), t.data().begin() +
                                         static_cast<std::ptrdiff_t>(n));
  if (t.numel() == n + 1) s.bias = t[n];
  return s;
}

Tensor ContextScorer::ToTensor() const {
  std::vector<float> v = weights;
  v.push_back(bias);
  const Shape dims = {static_cast<std::int64_t>(v.size())};
  return Tensor::FromData(dims, std::move(v));
}

double ContextScorer::Score(const Tensor& roi_map) const {
  if (roi_map.numel() != weights.size()) {
    throw ShapeError("scorer has " + std::to_string(weights.size()) +
                     " weights but the roi map has " +
                     std::to_string(roi_map.numel()) + " elements");
  }
  double acc = 0.0;
  const float* x = roi_map.raw();
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += static_cast<double>(weights[k]) * static_cast<double>(x[k]);
  }
  return acc + static_cast<double>(bias);
}

ScoredCandidates ScoreCandidates(const Tensor& features,
                                 const CandidatePool& pool,
                                 const ContextScorer& scorer,
                                 const RoiOpConfig& roi) {
  if (pool.empty()) throw Error("cannot score an empty candidate pool");
  ScoredCandidates out;
  out.scores.reserve(pool.size());
  out.maps.reserve(pool.size());
  for (const Candidate& c : pool.candidates) {
    out.maps.push_back(ExtractRoi(features, c.clipped, roi));
    out.scores.push_back(scorer.Score(out.maps.back().data));
  }
  return out;
}

MinedRoIFeature MineContext(const Tensor& features, const Box& object_roi,
                            const ContextScorer& scorer,
                            const MiningConfig& config) {
  CheckFeatureMap(features);
  const ContextLayout layout =
      BuildLayout(object_roi, config.grid.anchor_scale);
  const MapBounds bounds{static_cast<double>(features.dim(2)),
                         static_cast<double>(features.dim(1))};

  MinedRoIFeature mined;
  mined.score_gate = config.score_gate;
  mined.object_map = ExtractRoi(features, object_roi, config.roi);

  std::vector<Tensor> blocks;
  blocks.reserve(kNumCells + 1);
  blocks.push_back(mined.object_map.data);

  for (std::size_t k = 0; k < kNumCells; ++k) {
    MinedContext& sel = mined.selected[k];
    sel.direction = kDirections[k];
    const CandidatePool pool =
        EnumerateCandidates(layout, sel.direction, config.grid, bounds);
    sel.pool_size = pool.size();
    if (pool.empty()) {
      sel.fallback = true;
      sel.box = object_roi;
      sel.clipped = mined.object_map.clipped_roi;
      sel.map = mined.object_map;
      blocks.push_back(mined.object_map.data);
      continue;
    }
    // Streaming argmax; strict '>' keeps the lowest index on ties.
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double s = CandidateScore(features, pool.candidates[i].clipped,
                                      scorer, config.roi);
      if (i == 0 || s > sel.score) {
        sel.score = s;
        sel.candidate_index = static_cast<std::int64_t>(i);
      }
    }
    const Candidate& best =
        pool.candidates[static_cast<std::size_t>(sel.candidate_index)];
    sel.box = best.box;
    sel.clipped = best.clipped;
    sel.map = ExtractRoi(features, best.clipped, config.roi);
    sel.gate = 1.0 + config.score_gate * std::tanh(sel.score);
    blocks.push_back(GateBlock(sel.map.data, sel.gate));
  }
  mined.feature = ConcatChannels(blocks);
  return mined;
}

MiningGradients MineContextBackward(const Tensor& grad_feature,
                                    const MinedRoIFeature& mined,
                                    const Shape& feature_dims,
                                    const ContextScorer& scorer) {
  if (grad_feature.dims() != mined.feature.dims()) {
    throw ShapeError("gradient " + ShapeToString(grad_feature.dims()) +
                     " does not match mined feature " +
                     ShapeToString(mined.feature.dims()));
  }
  const std::int64_t depth = mined.object_map.data.dim(0);
  MiningGradients grads;
  grads.grad_features = Tensor::Zeros(feature_dims);
  grads.grad_weights.assign(scorer.weights.size(), 0.0f);

  AccumulateRoiBackward(SliceChannels(grad_feature, 0, depth),
                        mined.object_map, grads.grad_features);

  const double lambda = mined.score_gate;
  for (std::size_t k = 0; k < kNumCells; ++k) {
    const MinedContext& sel = mined.selected[k];
    Tensor block = SliceChannels(grad_feature,
                                 static_cast<std::int64_t>(k + 1) * depth, depth);
    if (sel.fallback) {
      AccumulateRoiBackward(block, mined.object_map, grads.grad_features);
      continue;
    }
    // block_out = gate(s) * map with s = <w, map> + b.
    const float* m = sel.map.data.raw();
    double g_dot_m = 0.0;
    for (std::size_t e = 0; e < block.numel(); ++e) {
      g_dot_m += static_cast<double>(block[e]) * static_cast<double>(m[e]);
    }
    const double t = std::tanh(sel.score);
    const double ds = g_dot_m * lambda * (1.0 - t * t);
    Tensor grad_map = block;
    for (std::size_t e = 0; e < grad_map.numel(); ++e) {
      grad_map[e] = static_cast<float>(sel.gate * block[e] +
                                       ds * scorer.weights[e]);
      grads.grad_weights[e] += static_cast<float>(ds * m[e]);
    }
    grads.grad_bias += ds;
    AccumulateRoiBackward(grad_map, sel.map, grads.grad_features);
  }
  return grads;
}

std::string_view VariantName(ContextVariant v) {
  switch (v) {
    case ContextVariant::kNone: return "none";
    case ContextVariant::kLocal: return "local";
    case ContextVariant::kGlobal: return "global";
    case ContextVariant::kNeighbor4: return "neigh4";
    case ContextVariant::kNeighbor8: return "neigh8";
  }
  return "?";
}

std::optional<ContextVariant> ParseVariant(std::string_view name) {
  for (auto v : {ContextVariant::kNone, ContextVariant::kLocal,
                 ContextVariant::kGlobal, ContextVariant::kNeighbor4,
                 ContextVariant::kNeighbor8}) {
    if (VariantName(v) == name) return v;
  }
  return std::nullopt;
}

VariantFeature FixedContextVariant(const Tensor& features,
                                   const Box& object_roi,
                                   ContextVariant variant,
                                   const RoiOpConfig& roi) {
  CheckFeatureMap(features);
  const ContextLayout layout = BuildLayout(object_roi);
  const double width = static_cast<double>(features.dim(2));
  const double height = static_cast<double>(features.dim(1));

  VariantFeature vf;
  vf.maps.push_back(ExtractRoi(features, object_roi, roi));
  vf.fallback.push_back(false);

  auto add_region = [&](const Box& region) {
    if (!Clip(region, width, height).has_positive_area()) {
      vf.maps.push_back(vf.maps.front());
      vf.fallback.push_back(true);
      return;
    }
    vf.maps.push_back(ExtractRoi(features, region, roi));
    vf.fallback.push_back(false);
  };

  switch (variant) {
    case ContextVariant::kNone:
      break;
    case ContextVariant::kLocal:
      add_region(object_roi.Scaled(kLocalContextScale));
      break;
    case ContextVariant::kGlobal:
      add_region(Box{0.0, 0.0, width, height});
      break;
    case ContextVariant::kNeighbor4:
      for (Direction d : {Direction::kTop, Direction::kLeft, Direction::kRight,
                          Direction::kBottom}) {
        add_region(layout.cell(d));
      }
      break;
    case ContextVariant::kNeighbor8:
      for (Direction d : kDirections) add_region(layout.cell(d));
      break;
  }

  std::vector<Tensor> blocks;
  blocks.reserve(vf.maps.size());
  for (const RoIMap& m : vf.maps) blocks.push_back(m.data);
  vf.feature = ConcatChannels(blocks);
  return vf;
}

Tensor FixedContextVariantBackward(const Tensor& grad_feature,
                                   const VariantFeature& vf,
                                   const Shape& feature_dims) {
  if (grad_feature.dims() != vf.feature.dims()) {
    throw ShapeError("gradient " + ShapeToString(grad_feature.dims()) +
                     " does not match variant feature " +
                     ShapeToString(vf.feature.dims()));
  }
  const std::int64_t depth = vf.maps.front().data.dim(0);
  Tensor grad = Tensor::Zeros(feature_dims);
  for (std::size_t b = 0; b < vf.maps.size(); ++b) {
    AccumulateRoiBackward(
        SliceChannels(grad_feature, static_cast<std::int64_t>(b) * depth, depth),
        vf.maps[b], grad);
  }
  return grad;
}

}  // namespace actx
