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

#ifndef ACTX_GEOMETRY_H_
#define ACTX_GEOMETRY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace actx {

// Axis-aligned box in continuous feature-map coordinates. Corners are used
// as-is: a box spanning [x1, x2) has width x2 - x1 (no +1 convention).
struct Box {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  static Box FromCenter(double cx, double cy, double w, double h) {
    return {cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h};
  }

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double center_x() const { return 0.5 * (x1 + x2); }
  double center_y() const { return 0.5 * (y1 + y2); }
  double area() const;
  double short_edge() const;
  double long_edge() const;
  bool has_positive_area() const { return x2 > x1 && y2 > y1; }

  Box Translated(double dx, double dy) const {
    return {x1 + dx, y1 + dy, x2 + dx, y2 + dy};
  }
  // Scales width and height by `factor` about the center.
  Box Scaled(double factor) const;

  bool operator==(const Box&) const = default;
};

// Clips to [0, width] x [0, height]. A box fully outside collapses to zero
// width or height rather than inverting.
Box Clip(const Box& b, double width, double height);

double IntersectionArea(const Box& a, const Box& b);
// Intersection over union; 0 when the union is empty.
double Iou(const Box& a, const Box& b);

// Standard R-CNN box-delta parameterization over center/size form.
struct RegressionTarget {
  float tx = 0.0f;
  float ty = 0.0f;
  float tw = 0.0f;
  float th = 0.0f;

  float operator[](std::size_t i) const {
    return i == 0 ? tx : i == 1 ? ty : i == 2 ? tw : th;
  }
  float& operator[](std::size_t i) {
    return i == 0 ? tx : i == 1 ? ty : i == 2 ? tw : th;
  }
  bool operator==(const RegressionTarget&) const = default;
};

// Throws DegenerateReferenceError if `ref` has non-positive width or height
// and DegenerateRoiError if `gt` does.
RegressionTarget Encode(const Box& gt, const Box& ref);
Box Decode(const RegressionTarget& t, const Box& ref);

struct ScoredBox {
  Box box;
  double score = 0.0;
  int label = 0;
};

// Greedy NMS. Candidates are visited by descending score (ties: lower input
// index first); a candidate is dropped if its IoU with any kept box exceeds
// `iou_threshold`. Returns kept input indices in visiting order.
std::vector<std::size_t> Nms(std::span<const ScoredBox> boxes,
                             double iou_threshold);

// k = |scales| * |ratios| anchors per feature-map position, ordered by
// position (row-major), then scale, then ratio. A ratio is height / width and
// each anchor has area scale^2. Anchors at (i, j) are the (0, 0) anchors
// translated by (j * stride, i * stride).
std::vector<Box> GenerateAnchors(std::int64_t feature_h, std::int64_t feature_w,
                                 std::span<const double> scales,
                                 std::span<const double> ratios, double stride);

struct GroundTruth {
  Box box;
  int label = 1;  // foreground class, >= 1
};

struct LabeledAssignment {
  static constexpr int kIgnore = -1;
  static constexpr int kBackground = 0;

  int label = kIgnore;
  int gt_index = -1;
  double max_iou = 0.0;
  RegressionTarget target;
};

// RPN-style assignment. An anchor whose best IoU is >= pos_iou is positive
// with that gt's class; below neg_iou it is background; otherwise ignored.
// Additionally, for every gt the anchors attaining its highest IoU (if > 0)
// are forced positive, so each overlapped gt has at least one positive.
std::vector<LabeledAssignment> AssignLabels(std::span<const Box> anchors,
                                            std::span<const GroundTruth> gt,
                                            double pos_iou, double neg_iou);

}  // namespace actx

#endif  // ACTX_GEOMETRY_H_
