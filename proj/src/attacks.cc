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

#include "actx/attacks.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "actx/error.h"
#include "actx/rng.h"

namespace actx {
namespace {

void CheckImage(const Tensor& image) {
  if (image.rank() != 3) {
    throw ShapeError("image must be C x H x W, got " +
                     ShapeToString(image.dims()));
  }
}

std::int64_t CenterCeil(double v) {
  return static_cast<std::int64_t>(std::ceil(v - 0.5));
}

}  // namespace

std::string_view PatchKindName(PatchKind k) {
  switch (k) {
    case PatchKind::kBlack: return "black";
    case PatchKind::kFlip: return "flip";
    case PatchKind::kRandom: return "random";
    case PatchKind::kAdversarial: return "adversarial";
  }
  return "?";
}

std::optional<PatchKind> ParsePatchKind(std::string_view name) {
  for (auto k : {PatchKind::kBlack, PatchKind::kFlip, PatchKind::kRandom,
                 PatchKind::kAdversarial}) {
    if (PatchKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view FlipAxisName(FlipAxis a) {
  switch (a) {
    case FlipAxis::kHorizontal: return "horizontal";
    case FlipAxis::kVertical: return "vertical";
    case FlipAxis::kBoth: return "both";
  }
  return "?";
}

Box PatchRegion(const Box& gt) {
  return Box::FromCenter(gt.center_x(), gt.center_y(), 0.5 * gt.width(),
                         0.5 * gt.height());
}

PixelRect PixelsOf(const Box& region) {
  return {CenterCeil(region.x1), CenterCeil(region.y1), CenterCeil(region.x2),
          CenterCeil(region.y2)};
}

PixelRect ClipRect(const PixelRect& r, std::int64_t height,
                   std::int64_t width) {
  PixelRect c{std::clamp<std::int64_t>(r.x0, 0, width),
              std::clamp<std::int64_t>(r.y0, 0, height),
              std::clamp<std::int64_t>(r.x1, 0, width),
              std::clamp<std::int64_t>(r.y1, 0, height)};
  c.x1 = std::max(c.x1, c.x0);
  c.y1 = std::max(c.y1, c.y0);
  return c;
}

PatchResult ApplyPatch(const Tensor& image, const Box& gt, PatchKind kind,
                       std::uint64_t seed, const Tensor* patch) {
  CheckImage(image);
  if (!gt.has_positive_area()) {
    throw DegenerateRoiError("ground-truth box must have positive size");
  }
  const std::int64_t channels = image.dim(0);
  const std::int64_t height = image.dim(1);
  const std::int64_t width = image.dim(2);
  if (kind == PatchKind::kAdversarial) {
    if (patch == nullptr) throw Error("adversarial attack needs a patch tensor");
    if (patch->rank() != 3 || patch->dim(0) != channels) {
      throw ShapeError("adversarial patch must be " + std::to_string(channels) +
                       " x h x w, got " + ShapeToString(patch->dims()));
    }
  }

  PatchResult result;
  result.image = image;
  const PixelRect full = PixelsOf(PatchRegion(gt));
  result.region = ClipRect(full, height, width);
  const PixelRect& r = result.region;
  if (r.empty()) return result;

  Rng rng(seed);
  Tensor& out = result.image;
  auto at = [&](Tensor& t, std::int64_t c, std::int64_t y, std::int64_t x)
      -> float& { return t[static_cast<std::size_t>((c * height + y) * width + x)]; };

  auto fill_black = [&] {
    for (std::int64_t c = 0; c < channels; ++c)
      for (std::int64_t y = r.y0; y < r.y1; ++y)
        for (std::int64_t x = r.x0; x < r.x1; ++x) at(out, c, y, x) = 0.0f;
  };

  switch (kind) {
    case PatchKind::kBlack:
      fill_black();
      break;

    case PatchKind::kFlip: {
      const auto axis = static_cast<FlipAxis>(rng.Below(3));
      result.axis = axis;
      const bool mirror_x = axis != FlipAxis::kVertical;
      const bool mirror_y = axis != FlipAxis::kHorizontal;
      Tensor src = image;
      for (std::int64_t c = 0; c < channels; ++c) {
        for (std::int64_t y = r.y0; y < r.y1; ++y) {
          const std::int64_t sy = mirror_y ? r.y0 + r.y1 - 1 - y : y;
          for (std::int64_t x = r.x0; x < r.x1; ++x) {
            const std::int64_t sx = mirror_x ? r.x0 + r.x1 - 1 - x : x;
            at(out, c, y, x) = at(src, c, sy, sx);
          }
        }
      }
      break;
    }

    case PatchKind::kRandom: {
      const std::int64_t pw = r.width();
      const std::int64_t ph = r.height();
      std::optional<PixelRect> source;
      if (pw <= width && ph <= height) {
        for (int draw = 0; draw < kRandomPatchDraws && !source; ++draw) {
          const auto sx = static_cast<std::int64_t>(
              rng.Below(static_cast<std::uint64_t>(width - pw + 1)));
          const auto sy = static_cast<std::int64_t>(
              rng.Below(static_cast<std::uint64_t>(height - ph + 1)));
          const PixelRect cand{sx, sy, sx + pw, sy + ph};
          if (IntersectionArea(cand.AsBox(), gt) == 0.0) source = cand;
        }
      }
      if (!source) {
        result.fell_back_to_black = true;
        fill_black();
        break;
      }
      result.source = source;
      Tensor src = image;
      for (std::int64_t c = 0; c < channels; ++c)
        for (std::int64_t y = 0; y < ph; ++y)
          for (std::int64_t x = 0; x < pw; ++x)
            at(out, c, r.y0 + y, r.x0 + x) =
                at(src, c, source->y0 + y, source->x0 + x);
      break;
    }

    case PatchKind::kAdversarial: {
      const std::int64_t fw = full.width();
      const std::int64_t fh = full.height();
      const std::int64_t pw = patch->dim(2);
      const std::int64_t ph = patch->dim(1);
      for (std::int64_t c = 0; c < channels; ++c) {
        for (std::int64_t y = r.y0; y < r.y1; ++y) {
          const std::int64_t py = std::min(
              ph - 1, static_cast<std::int64_t>(std::floor(
                          (static_cast<double>(y - full.y0) + 0.5) *
                          static_cast<double>(ph) / static_cast<double>(fh))));
          for (std::int64_t x = r.x0; x < r.x1; ++x) {
            const std::int64_t px = std::min(
                pw - 1, static_cast<std::int64_t>(std::floor(
                            (static_cast<double>(x - full.x0) + 0.5) *
                            static_cast<double>(pw) / static_cast<double>(fw))));
            at(out, c, y, x) = patch->at(c, py, px);
          }
        }
      }
      break;
    }
  }
  return result;
}

ImageAttackResult AttackImage(const Tensor& image, std::span<const Box> gts,
                              PatchKind kind, std::uint64_t seed,
                              const Tensor* patch) {
  CheckImage(image);
  ImageAttackResult result;
  result.image = image;
  const Rng root(seed);
  for (std::size_t k = 0; k < gts.size(); ++k) {
    Rng stream = root.Fork(k);
    PatchResult p =
        ApplyPatch(result.image, gts[k], kind, stream.NextU64(), patch);
    result.image = std::move(p.image);
    p.image = Tensor();
    result.objects.push_back(std::move(p));
  }
  return result;
}

}  // namespace actx
