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

#ifndef ACTX_ATTACKS_H_
#define ACTX_ATTACKS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "actx/geometry.h"
#include "actx/tensor.h"

namespace actx {

enum class PatchKind { kBlack, kFlip, kRandom, kAdversarial };
enum class FlipAxis { kHorizontal, kVertical, kBoth };

std::string_view PatchKindName(PatchKind k);
std::optional<PatchKind> ParsePatchKind(std::string_view name);
std::string_view FlipAxisName(FlipAxis a);

// Box with gt's center and half its width and height.
Box PatchRegion(const Box& gt);

// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct PixelRect {
  std::int64_t x0 = 0;
  std::int64_t y0 = 0;
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;

  std::int64_t width() const { return x1 > x0 ? x1 - x0 : 0; }
  std::int64_t height() const { return y1 > y0 ? y1 - y0 : 0; }
  bool empty() const { return width() == 0 || height() == 0; }
  Box AsBox() const {
    return {static_cast<double>(x0), static_cast<double>(y0),
            static_cast<double>(x1), static_cast<double>(y1)};
  }
  bool operator==(const PixelRect&) const = default;
};

// Pixels whose centers (x + 0.5, y + 0.5) lie in [x1, x2) x [y1, y2).
PixelRect PixelsOf(const Box& region);
PixelRect ClipRect(const PixelRect& r, std::int64_t height, std::int64_t width);

inline constexpr int kRandomPatchDraws = 100;

struct PatchResult {
  Tensor image;
  PixelRect region;  // written pixels (clipped to the image)
  std::optional<FlipAxis> axis;
  std::optional<PixelRect> source;  // random patches
  bool fell_back_to_black = false;
};

// Occludes the center of `gt` in a C x H x W image. Only pixels of region
// are written. Flip mirrors the region's own content along a seed-chosen
// axis. Random copies an equal-size block that lies in the image and has
// zero overlap with gt; after kRandomPatchDraws failed draws it writes black
// and sets fell_back_to_black. Adversarial requires `patch` (C x h x w),
// which is nearest-neighbor resized onto the unclipped region. A region with
// no pixels inside the image leaves the image unchanged.
PatchResult ApplyPatch(const Tensor& image, const Box& gt, PatchKind kind,
                       std::uint64_t seed, const Tensor* patch = nullptr);

struct ImageAttackResult {
  Tensor image;
  std::vector<PatchResult> objects;  // image field left empty
};

// Applies one patch per object, in order; object k uses seed stream k.
ImageAttackResult AttackImage(const Tensor& image, std::span<const Box> gts,
                              PatchKind kind, std::uint64_t seed,
                              const Tensor* patch = nullptr);

}  // namespace actx

#endif  // ACTX_ATTACKS_H_
