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

#ifndef ACTX_CTX_MINING_H_
#define ACTX_CTX_MINING_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "actx/geometry.h"
#include "actx/roi_ops.h"
#include "actx/tensor.h"

namespace actx {

// Surrounding cells of the 3x3 layout, in feature concatenation order.
enum class Direction : std::uint8_t {
  kLeftTop,
  kTop,
  kRightTop,
  kLeft,
  kRight,
  kLeftBottom,
  kBottom,
  kRightBottom,
};

inline constexpr std::size_t kNumCells = 8;
inline constexpr std::array<Direction, kNumCells> kDirections = {
    Direction::kLeftTop,    Direction::kTop,    Direction::kRightTop,
    Direction::kLeft,       Direction::kRight,  Direction::kLeftBottom,
    Direction::kBottom,     Direction::kRightBottom};

std::string_view DirectionName(Direction d);
// Cell displacement in units of the object RoI's width and height.
int DirectionDx(Direction d);
int DirectionDy(Direction d);

struct ContextLayout {
  Box object_roi;
  std::array<Box, kNumCells> cells;
  // b_0 of every cell: centered, anchor_scale times the cell's size.
  std::array<Box, kNumCells> anchors;

  const Box& cell(Direction d) const {
    return cells[static_cast<std::size_t>(d)];
  }
  const Box& anchor(Direction d) const {
    return anchors[static_cast<std::size_t>(d)];
  }
};

// Throws DegenerateRoiError if `object_roi` has no area. Cells may extend
// outside the feature map.
ContextLayout BuildLayout(const Box& object_roi, double anchor_scale = 0.5);

// Relative tolerance applied to the three pool constraints so that boxes
// built exactly on a bound (e.g. a one-third edge) are not rejected by
// rounding in corner arithmetic.
inline constexpr double kConstraintTolerance = 1e-9;

// Discretization of the candidate context-RoI space, relative to a cell, plus
// the pool constraints. Raw candidates are every combination of
// (y offset, x offset, height scale, width scale) in that loop order; the
// candidate is centered at cell center + offset * cell size with size
// scale * cell size.
struct CandidateGridSpec {
  std::vector<double> center_offsets = {-0.25, -0.125, 0.0, 0.125, 0.25};
  std::vector<double> size_scales = {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0};

  double min_short_ratio = 1.0 / 3.0;  // short edge vs cell short edge
  double max_long_ratio = 1.0;         // long edge vs cell long edge
  double min_anchor_iou = 0.3;
  double anchor_scale = 0.5;

  std::size_t raw_count() const {
    return center_offsets.size() * center_offsets.size() *
           size_scales.size() * size_scales.size();
  }
};

struct MapBounds {
  double width = 0.0;
  double height = 0.0;
};

std::vector<Box> RawCandidates(const Box& cell, const CandidateGridSpec& spec);

// The size and IoU constraints, evaluated on the unclipped candidate.
bool SatisfiesPoolConstraints(const Box& candidate, const Box& cell,
                              const Box& anchor, const CandidateGridSpec& spec);

struct Candidate {
  Box box;      // as enumerated
  Box clipped;  // clipped to the map; equals `box` without bounds
};

struct CandidatePool {
  Box cell;
  Box anchor;
  std::vector<Candidate> candidates;  // candidates[0] is the anchor b_0
  static constexpr std::size_t anchor_index = 0;

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }
};

// Candidate pool of one cell. The anchor comes first; other raw candidates
// that pass the constraints are clipped to `bounds` (when given) and kept if
// their clipped short edge still meets the minimum. The pool is empty when
// the anchor has no area inside `bounds`.
CandidatePool EnumerateCellCandidates(const Box& cell,
                                      const CandidateGridSpec& spec,
                                      std::optional<MapBounds> bounds);
CandidatePool EnumerateCandidates(const ContextLayout& layout,
                                  Direction direction,
                                  const CandidateGridSpec& spec,
                                  std::optional<MapBounds> bounds);

// Shared one-output linear layer over a flattened D x ph x pw RoI map.
struct ContextScorer {
  std::vector<float> weights;
  float bias = 0.0f;

  static ContextScorer Zeros(std::int64_t depth, std::int64_t pooled_h,
                             std::int64_t pooled_w);
  // Accepts a rank-1 tensor of length n (bias 0) or n + 1 (bias last), where
  // n = depth * pooled_h * pooled_w.
  static ContextScorer FromTensor(const Tensor& t, std::size_t n);
  Tensor ToTensor() const;

  double Score(const Tensor& roi_map) const;
};

struct ScoredCandidates {
  std::vector<double> scores;
  std::vector<RoIMap> maps;
};

ScoredCandidates ScoreCandidates(const Tensor& features,
                                 const CandidatePool& pool,
                                 const ContextScorer& scorer,
                                 const RoiOpConfig& roi);

struct MiningConfig {
  RoiOpConfig roi;
  CandidateGridSpec grid;
  // Mined block c is emitted as (1 + score_gate * tanh(s_c)) * map_c, where
  // s_c is the selected candidate's score. This is the path by which the task
  // loss reaches the scorer. 0 gives plain concatenation; with a zero scorer
  // the gate is exactly 1 for any value.
  double score_gate = 1.0;
};

struct MinedContext {
  Direction direction = Direction::kLeftTop;
  // True when the cell's pool was empty and the object map was substituted.
  bool fallback = false;
  std::int64_t candidate_index = -1;
  Box box;
  Box clipped;
  double score = 0.0;
  double gate = 1.0;
  std::size_t pool_size = 0;
  RoIMap map;
};

struct MinedRoIFeature {
  Tensor feature;  // 9D x ph x pw: object block, then kDirections order
  RoIMap object_map;
  std::array<MinedContext, kNumCells> selected;
  double score_gate = 0.0;
};

// Throws DegenerateRoiError for an object RoI without area in the map.
MinedRoIFeature MineContext(const Tensor& features, const Box& object_roi,
                            const ContextScorer& scorer,
                            const MiningConfig& config);

struct MiningGradients {
  Tensor grad_features;
  std::vector<float> grad_weights;
  double grad_bias = 0.0;
};

// Subgradient with selections held fixed.
MiningGradients MineContextBackward(const Tensor& grad_feature,
                                    const MinedRoIFeature& mined,
                                    const Shape& feature_dims,
                                    const ContextScorer& scorer);

enum class ContextVariant { kNone, kLocal, kGlobal, kNeighbor4, kNeighbor8 };

std::string_view VariantName(ContextVariant v);
std::optional<ContextVariant> ParseVariant(std::string_view name);

struct VariantFeature {
  Tensor feature;
  std::vector<RoIMap> maps;  // one per channel block
  std::vector<bool> fallback;
};

inline constexpr double kLocalContextScale = 1.5;

// Fixed context layouts: object map alone, or concatenated with a 1.5x
// enlarged RoI, the whole map, the 4 edge-sharing cells (top, left, right,
// bottom) or all 8 cells. A cell with no area inside the map falls back to
// the object map.
VariantFeature FixedContextVariant(const Tensor& features,
                                   const Box& object_roi,
                                   ContextVariant variant,
                                   const RoiOpConfig& roi);
Tensor FixedContextVariantBackward(const Tensor& grad_feature,
                                   const VariantFeature& vf,
                                   const Shape& feature_dims);

}  // namespace actx

#endif  // ACTX_CTX_MINING_H_
