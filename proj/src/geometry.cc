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

#include "actx/geometry.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "actx/error.h"

namespace actx {

double Box::area() const {
  return std::max(0.0, width()) * std::max(0.0, height());
}

double Box::short_edge() const { return std::min(width(), height()); }
double Box::long_edge() const { return std::max(width(), height()); }

Box Box::Scaled(double factor) const {
  if (factor == 1.0) return *this;
  return FromCenter(center_x(), center_y(), width() * factor,
                    height() * factor);
}

Box Clip(const Box& b, double width, double height) {
  Box c{std::clamp(b.x1, 0.0, width), std::clamp(b.y1, 0.0, height),
        std::clamp(b.x2, 0.0, width), std::clamp(b.y2, 0.0, height)};
  c.x2 = std::max(c.x2, c.x1);
  c.y2 = std::max(c.y2, c.y1);
  return c;
}

double IntersectionArea(const Box& a, const Box& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double Iou(const Box& a, const Box& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

RegressionTarget Encode(const Box& gt, const Box& ref) {
  if (!ref.has_positive_area()) {
    throw DegenerateReferenceError("reference box must have positive size");
  }
  if (!gt.has_positive_area()) {
    throw DegenerateRoiError("ground-truth box must have positive size");
  }
  const double rw = ref.width();
  const double rh = ref.height();
  return {static_cast<float>((gt.center_x() - ref.center_x()) / rw),
          static_cast<float>((gt.center_y() - ref.center_y()) / rh),
          static_cast<float>(std::log(gt.width() / rw)),
          static_cast<float>(std::log(gt.height() / rh))};
}

Box Decode(const RegressionTarget& t, const Box& ref) {
  if (!ref.has_positive_area()) {
    throw DegenerateReferenceError("reference box must have positive size");
  }
  const double rw = ref.width();
  const double rh = ref.height();
  return Box::FromCenter(ref.center_x() + static_cast<double>(t.tx) * rw,
                         ref.center_y() + static_cast<double>(t.ty) * rh,
                         rw * std::exp(static_cast<double>(t.tw)),
                         rh * std::exp(static_cast<double>(t.th)));
}

std::vector<std::size_t> Nms(std::span<const ScoredBox> boxes,
                             double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw Error("NMS IoU threshold must be in (0, 1]");
  }
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return boxes[a].score > boxes[b].score;
                   });
  std::vector<std::size_t> keep;
  std::vector<bool> suppressed(boxes.size(), false);
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    if (suppressed[i]) continue;
    keep.push_back(i);
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (!suppressed[j] && Iou(boxes[i].box, boxes[j].box) > iou_threshold) {
        suppressed[j] = true;
      }
    }
  }
  return keep;
}

std::vector<Box> GenerateAnchors(std::int64_t feature_h, std::int64_t feature_w,
                                 std::span<const double> scales,
                                 std::span<const double> ratios,
                                 double stride) {
  if (feature_h < 1 || feature_w < 1) {
    throw Error("anchor grid extents must be positive");
  }
  if (!(stride > 0.0)) throw Error("anchor stride must be positive");
  std::vector<Box> base;
  base.reserve(scales.size() * ratios.size());
  for (double s : scales) {
    for (double r : ratios) {
      if (!(s > 0.0) || !(r > 0.0)) {
        throw Error("anchor scales and ratios must be positive");
      }
      const double root = std::sqrt(r);
      base.push_back(
          Box::FromCenter(0.5 * stride, 0.5 * stride, s / root, s * root));
    }
  }
  std::vector<Box> anchors;
  anchors.reserve(base.size() * static_cast<std::size_t>(feature_h * feature_w));
  for (std::int64_t i = 0; i < feature_h; ++i) {
    for (std::int64_t j = 0; j < feature_w; ++j) {
      const double dx = static_cast<double>(j) * stride;
      const double dy = static_cast<double>(i) * stride;
      for (const Box& b : base) anchors.push_back(b.Translated(dx, dy));
    }
  }
  return anchors;
}

std::vector<LabeledAssignment> AssignLabels(std::span<const Box> anchors,
                                            std::span<const GroundTruth> gt,
                                            double pos_iou, double neg_iou) {
  if (!(pos_iou > neg_iou)) throw Error("pos_iou must exceed neg_iou");
  std::vector<LabeledAssignment> out(anchors.size());
  if (gt.empty()) {
    for (auto& a : out) a.label = LabeledAssignment::kBackground;
    return out;
  }

  std::vector<double> iou(anchors.size() * gt.size());
  std::vector<double> gt_best(gt.size(), 0.0);
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    double best = -1.0;
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double v = Iou(anchors[a], gt[g].box);
      iou[a * gt.size() + g] = v;
      gt_best[g] = std::max(gt_best[g], v);
      if (v > best) {
        best = v;
        out[a].gt_index = static_cast<int>(g);
      }
    }
    out[a].max_iou = best;
  }

  for (auto& a : out) {
    if (a.max_iou >= pos_iou) {
      a.label = gt[static_cast<std::size_t>(a.gt_index)].label;
    } else if (a.max_iou < neg_iou) {
      a.label = LabeledAssignment::kBackground;
    } else {
      a.label = LabeledAssignment::kIgnore;
    }
  }

  // Argmax rule. An anchor forced by several gts takes the one it overlaps
  // most; ties go to the lower gt index.
  std::vector<double> forced_iou(anchors.size(), -1.0);
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (gt_best[g] <= 0.0) continue;
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      const double v = iou[a * gt.size() + g];
      if (v != gt_best[g] || out[a].max_iou >= pos_iou) continue;
      if (v > forced_iou[a]) {
        forced_iou[a] = v;
        out[a].gt_index = static_cast<int>(g);
        out[a].label = gt[g].label;
      }
    }
  }

  for (std::size_t a = 0; a < anchors.size(); ++a) {
    if (out[a].label >= 1) {
      out[a].target =
          Encode(gt[static_cast<std::size_t>(out[a].gt_index)].box, anchors[a]);
    } else {
      out[a].gt_index = -1;
    }
  }
  return out;
}

}  // namespace actx
