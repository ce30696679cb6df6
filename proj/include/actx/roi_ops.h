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

#ifndef ACTX_ROI_OPS_H_
#define ACTX_ROI_OPS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "actx/geometry.h"
#include "actx/tensor.h"

namespace actx {

enum class RoiBackbone { kPool, kAlign };

struct RoiOpConfig {
  std::int64_t pooled_h = 7;
  std::int64_t pooled_w = 7;
  RoiBackbone backbone = RoiBackbone::kPool;
  std::int64_t samples_per_bin = 2;  // align only
};

// One bilinear contribution of a RoIAlign bin: `weight` already includes the
// 1 / samples_per_bin^2 averaging factor. `index` is y * W + x.
struct BilinearTap {
  std::int32_t index = 0;
  float weight = 0.0f;
};

// Result of a RoI operator plus what its backward pass needs.
struct RoIMap {
  static constexpr std::int64_t kEmptyBin = -1;

  Tensor data;  // D x ph x pw
  Box source_roi;
  Box clipped_roi;
  RoiBackbone backbone = RoiBackbone::kPool;
  Shape source_dims;  // D x H x W of the feature map
  // Pool: flat source index (d * H * W + y * W + x) per output element, or
  // kEmptyBin.
  std::vector<std::int64_t> argmax;
  // Align: taps_per_bin taps for bin (i, j) start at (i * pw + j) * taps_per_bin.
  std::vector<BilinearTap> taps;
  std::int64_t taps_per_bin = 0;
};

// Max pooling over a ph x pw grid laid on the RoI clipped to [0,W] x [0,H].
// Bin i spans [y1 + h*i/ph, y1 + h*(i+1)/ph) (the last bin ends exactly at
// y2) and covers integer rows floor(start) .. ceil(end) - 1, clamped to the
// map; likewise for columns. Ties keep the first maximum in raster order.
// Throws DegenerateRoiError when the clipped RoI has no area.
RoIMap RoiPool(const Tensor& features, const Box& roi, std::int64_t pooled_h,
               std::int64_t pooled_w);

// sum_k weights[k] * RoiPool(...).data[k], accumulated in double in flat
// order, without materializing the map. Bit-identical to the two-step form.
double RoiPoolDot(const Tensor& features, const Box& roi, std::int64_t pooled_h,
                  std::int64_t pooled_w, std::span<const float> weights);

// Routes each output gradient to its argmax source element.
Tensor RoiPoolBackward(const Tensor& grad_out, const RoIMap& map,
                       const Shape& feature_dims);

// Average of samples_per_bin^2 bilinear samples per bin, on the same clipped
// grid as RoiPool but without quantization. Feature element (y, x) sits at
// continuous coordinate (y, x); sample coordinates are clamped to
// [0, H-1] x [0, W-1].
RoIMap RoiAlign(const Tensor& features, const Box& roi, std::int64_t pooled_h,
                std::int64_t pooled_w, std::int64_t samples_per_bin = 2);

Tensor RoiAlignBackward(const Tensor& grad_out, const RoIMap& map,
                        const Shape& feature_dims);

// Dispatch on config.backbone.
RoIMap ExtractRoi(const Tensor& features, const Box& roi,
                  const RoiOpConfig& config);
Tensor ExtractRoiBackward(const Tensor& grad_out, const RoIMap& map,
                          const Shape& feature_dims);
// Adds the backward of one RoI map into `grad_features`.
void AccumulateRoiBackward(const Tensor& grad_out, const RoIMap& map,
                           Tensor& grad_features);

}  // namespace actx

#endif  // ACTX_ROI_OPS_H_
