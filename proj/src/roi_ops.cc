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

#include "actx/roi_ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "actx/error.h"

namespace actx {
namespace {

void CheckFeatures(const Tensor& f, std::int64_t ph, std::int64_t pw) {
  if (f.rank() != 3) {
    throw ShapeError("feature map must be D x H x W, got " +
                     ShapeToString(f.dims()));
  }
  if (ph < 1 || pw < 1) throw ShapeError("pooled extents must be >= 1");
}

Box ClipOrThrow(const Box& roi, std::int64_t height, std::int64_t width) {
  const Box c =
      Clip(roi, static_cast<double>(width), static_cast<double>(height));
  if (!c.has_positive_area()) {
    throw DegenerateRoiError("roi " + std::to_string(roi.x1) + "," +
                             std::to_string(roi.y1) + "," +
                             std::to_string(roi.x2) + "," +
                             std::to_string(roi.y2) +
                             " has no area inside the feature map");
  }
  return c;
}

// Start of bin i of n over [lo, hi]; BinEdge(n) is exactly hi.
double BinEdge(double lo, double hi, std::int64_t i, std::int64_t n) {
  if (i >= n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
}

struct PoolBins {
  std::vector<std::int64_t> row_lo, row_hi, col_lo, col_hi;
};

PoolBins MakePoolBins(const Box& clipped, std::int64_t pooled_h,
                      std::int64_t pooled_w, std::int64_t height,
                      std::int64_t width) {
  PoolBins b;
  b.row_lo.resize(pooled_h);
  b.row_hi.resize(pooled_h);
  b.col_lo.resize(pooled_w);
  b.col_hi.resize(pooled_w);
  for (std::int64_t i = 0; i < pooled_h; ++i) {
    b.row_lo[i] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(
            std::floor(BinEdge(clipped.y1, clipped.y2, i, pooled_h))),
        0, height);
    b.row_hi[i] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(
            std::ceil(BinEdge(clipped.y1, clipped.y2, i + 1, pooled_h))),
        0, height);
  }
  for (std::int64_t j = 0; j < pooled_w; ++j) {
    b.col_lo[j] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(
            std::floor(BinEdge(clipped.x1, clipped.x2, j, pooled_w))),
        0, width);
    b.col_hi[j] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(
            std::ceil(BinEdge(clipped.x1, clipped.x2, j + 1, pooled_w))),
        0, width);
  }
  return b;
}

void CheckBackward(const Tensor& grad_out, const RoIMap& map,
                   const Shape& feature_dims) {
  if (grad_out.dims() != map.data.dims()) {
    throw ShapeError("gradient " + ShapeToString(grad_out.dims()) +
                     " does not match roi map " +
                     ShapeToString(map.data.dims()));
  }
  if (feature_dims != map.source_dims) {
    throw ShapeError("feature dims " + ShapeToString(feature_dims) +
                     " differ from the forward pass " +
                     ShapeToString(map.source_dims));
  }
}

}  // namespace

RoIMap RoiPool(const Tensor& features, const Box& roi, std::int64_t pooled_h,
               std::int64_t pooled_w) {
  CheckFeatures(features, pooled_h, pooled_w);
  const std::int64_t depth = features.dim(0);
  const std::int64_t height = features.dim(1);
  const std::int64_t width = features.dim(2);
  const Box clipped = ClipOrThrow(roi, height, width);

  RoIMap map;
  map.source_roi = roi;
  map.clipped_roi = clipped;
  map.backbone = RoiBackbone::kPool;
  map.source_dims = features.dims();
  map.data = Tensor::Zeros({depth, pooled_h, pooled_w});
  map.argmax.assign(map.data.numel(), RoIMap::kEmptyBin);

  const PoolBins bins = MakePoolBins(clipped, pooled_h, pooled_w, height, width);

  const float* src = features.raw();
  float* dst = map.data.raw();
  const std::int64_t plane = height * width;
  std::size_t out = 0;
  for (std::int64_t d = 0; d < depth; ++d) {
    const float* channel = src + d * plane;
    for (std::int64_t i = 0; i < pooled_h; ++i) {
      for (std::int64_t j = 0; j < pooled_w; ++j, ++out) {
        float best = -std::numeric_limits<float>::infinity();
        std::int64_t best_index = RoIMap::kEmptyBin;
        for (std::int64_t y = bins.row_lo[i]; y < bins.row_hi[i]; ++y) {
          for (std::int64_t x = bins.col_lo[j]; x < bins.col_hi[j]; ++x) {
            const float v = channel[y * width + x];
            if (v > best || best_index == RoIMap::kEmptyBin) {
              best = v;
              best_index = d * plane + y * width + x;
            }
          }
        }
        if (best_index != RoIMap::kEmptyBin) {
          dst[out] = best;
          map.argmax[out] = best_index;
        }
      }
    }
  }
  return map;
}

double RoiPoolDot(const Tensor& features, const Box& roi, std::int64_t pooled_h,
                  std::int64_t pooled_w, std::span<const float> weights) {
  CheckFeatures(features, pooled_h, pooled_w);
  const std::int64_t depth = features.dim(0);
  const std::int64_t height = features.dim(1);
  const std::int64_t width = features.dim(2);
  if (weights.size() != static_cast<std::size_t>(depth * pooled_h * pooled_w)) {
    throw ShapeError("weight count does not match the pooled map size");
  }
  const Box clipped = ClipOrThrow(roi, height, width);
  const PoolBins bins = MakePoolBins(clipped, pooled_h, pooled_w, height, width);

  const std::int64_t plane = height * width;
  double acc = 0.0;
  std::size_t out = 0;
  for (std::int64_t d = 0; d < depth; ++d) {
    const float* channel = features.raw() + d * plane;
    for (std::int64_t i = 0; i < pooled_h; ++i) {
      for (std::int64_t j = 0; j < pooled_w; ++j, ++out) {
        const float* row = channel + bins.row_lo[i] * width;
        const std::int64_t x0 = bins.col_lo[j];
        const std::int64_t x1 = bins.col_hi[j];
        if (x0 >= x1 || bins.row_lo[i] >= bins.row_hi[i]) continue;
        float best = row[x0];
        for (std::int64_t y = bins.row_lo[i]; y < bins.row_hi[i];
             ++y, row += width) {
          for (std::int64_t x = x0; x < x1; ++x) {
            best = row[x] > best ? row[x] : best;
          }
        }
        acc += static_cast<double>(weights[out]) * static_cast<double>(best);
      }
    }
  }
  return acc;
}

Tensor RoiPoolBackward(const Tensor& grad_out, const RoIMap& map,
                       const Shape& feature_dims) {
  Tensor grad = Tensor::Zeros(feature_dims);
  if (map.backbone != RoiBackbone::kPool) {
    throw Error("RoiPoolBackward given a RoIAlign map");
  }
  AccumulateRoiBackward(grad_out, map, grad);
  return grad;
}

RoIMap RoiAlign(const Tensor& features, const Box& roi, std::int64_t pooled_h,
                std::int64_t pooled_w, std::int64_t samples_per_bin) {
  CheckFeatures(features, pooled_h, pooled_w);
  if (samples_per_bin < 1) throw ShapeError("samples_per_bin must be >= 1");
  const std::int64_t depth = features.dim(0);
  const std::int64_t height = features.dim(1);
  const std::int64_t width = features.dim(2);
  const Box clipped = ClipOrThrow(roi, height, width);

  RoIMap map;
  map.source_roi = roi;
  map.clipped_roi = clipped;
  map.backbone = RoiBackbone::kAlign;
  map.source_dims = features.dims();
  map.data = Tensor::Zeros({depth, pooled_h, pooled_w});
  map.taps_per_bin = samples_per_bin * samples_per_bin * 4;
  map.taps.resize(static_cast<std::size_t>(pooled_h * pooled_w *
                                           map.taps_per_bin));

  const double bin_h = clipped.height() / static_cast<double>(pooled_h);
  const double bin_w = clipped.width() / static_cast<double>(pooled_w);
  const double s = static_cast<double>(samples_per_bin);
  const double inv_count = 1.0 / (s * s);
  const double max_y = static_cast<double>(height - 1);
  const double max_x = static_cast<double>(width - 1);

  // Low/high grid index and fractional weight along one axis.
  struct Axis {
    std::int32_t lo, hi;
    double frac;
  };
  auto axis = [](double v, double vmax) {
    v = std::clamp(v, 0.0, vmax);
    const auto lo = static_cast<std::int32_t>(std::floor(v));
    if (static_cast<double>(lo) >= vmax) {
      return Axis{lo, lo, 0.0};
    }
    return Axis{lo, lo + 1, v - lo};
  };

  BilinearTap* tap = map.taps.data();
  for (std::int64_t i = 0; i < pooled_h; ++i) {
    for (std::int64_t j = 0; j < pooled_w; ++j) {
      for (std::int64_t sy = 0; sy < samples_per_bin; ++sy) {
        const double y = clipped.y1 + static_cast<double>(i) * bin_h +
                         (static_cast<double>(sy) + 0.5) * bin_h / s;
        const Axis ay = axis(y, max_y);
        for (std::int64_t sx = 0; sx < samples_per_bin; ++sx) {
          const double x = clipped.x1 + static_cast<double>(j) * bin_w +
                           (static_cast<double>(sx) + 0.5) * bin_w / s;
          const Axis ax = axis(x, max_x);
          const auto w = static_cast<std::int32_t>(width);
          *tap++ = {ay.lo * w + ax.lo, static_cast<float>((1.0 - ay.frac) *
                                                          (1.0 - ax.frac) *
                                                          inv_count)};
          *tap++ = {ay.lo * w + ax.hi,
                    static_cast<float>((1.0 - ay.frac) * ax.frac * inv_count)};
          *tap++ = {ay.hi * w + ax.lo,
                    static_cast<float>(ay.frac * (1.0 - ax.frac) * inv_count)};
          *tap++ = {ay.hi * w + ax.hi,
                    static_cast<float>(ay.frac * ax.frac * inv_count)};
        }
      }
    }
  }

  const std::int64_t plane = height * width;
  const std::int64_t bins = pooled_h * pooled_w;
  for (std::int64_t d = 0; d < depth; ++d) {
    const float* channel = features.raw() + d * plane;
    for (std::int64_t b = 0; b < bins; ++b) {
      const BilinearTap* t = map.taps.data() + b * map.taps_per_bin;
      double acc = 0.0;
      for (std::int64_t k = 0; k < map.taps_per_bin; ++k) {
        acc += static_cast<double>(t[k].weight) * channel[t[k].index];
      }
      map.data[static_cast<std::size_t>(d * bins + b)] =
          static_cast<float>(acc);
    }
  }
  return map;
}

Tensor RoiAlignBackward(const Tensor& grad_out, const RoIMap& map,
                        const Shape& feature_dims) {
  Tensor grad = Tensor::Zeros(feature_dims);
  if (map.backbone != RoiBackbone::kAlign) {
    throw Error("RoiAlignBackward given a RoIPool map");
  }
  AccumulateRoiBackward(grad_out, map, grad);
  return grad;
}

RoIMap ExtractRoi(const Tensor& features, const Box& roi,
                  const RoiOpConfig& config) {
  if (config.backbone == RoiBackbone::kAlign) {
    return RoiAlign(features, roi, config.pooled_h, config.pooled_w,
                    config.samples_per_bin);
  }
  return RoiPool(features, roi, config.pooled_h, config.pooled_w);
}

Tensor ExtractRoiBackward(const Tensor& grad_out, const RoIMap& map,
                          const Shape& feature_dims) {
  Tensor grad = Tensor::Zeros(feature_dims);
  AccumulateRoiBackward(grad_out, map, grad);
  return grad;
}

void AccumulateRoiBackward(const Tensor& grad_out, const RoIMap& map,
                           Tensor& grad_features) {
  CheckBackward(grad_out, map, grad_features.dims());
  if (map.backbone == RoiBackbone::kPool) {
    for (std::size_t k = 0; k < grad_out.numel(); ++k) {
      if (map.argmax[k] != RoIMap::kEmptyBin) {
        grad_features[static_cast<std::size_t>(map.argmax[k])] += grad_out[k];
      }
    }
    return;
  }
  const std::int64_t depth = map.source_dims[0];
  const std::int64_t plane = map.source_dims[1] * map.source_dims[2];
  const std::int64_t bins = map.data.dim(1) * map.data.dim(2);
  for (std::int64_t d = 0; d < depth; ++d) {
    float* channel = grad_features.raw() + d * plane;
    for (std::int64_t b = 0; b < bins; ++b) {
      const float g = grad_out[static_cast<std::size_t>(d * bins + b)];
      if (g == 0.0f) continue;
      const BilinearTap* t = map.taps.data() + b * map.taps_per_bin;
      for (std::int64_t k = 0; k < map.taps_per_bin; ++k) {
        channel[t[k].index] += g * t[k].weight;
      }
    }
  }
}

}  // namespace actx
