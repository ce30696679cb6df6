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


#include <algorithm>
#include <cmath>
#include <vector>

#include "actx/error.h"
#include "actx/geometry.h"
#include "doctest.h"
#include "oracles.h"
#include "test_util.h"

namespace actx {
namespace {

using testing::RandomBox;

TEST_CASE("iou of identical, disjoint and half-shifted boxes") {
  const Box a{0, 0, 10, 10};
  CHECK(Iou(a, a) == 1.0);
  CHECK(Iou(a, Box{20, 20, 30, 30}) == 0.0);
  CHECK(Iou(a, Box{10, 0, 20, 10}) == 0.0);
  CHECK(Iou(a, Box{5, 0, 15, 10}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(Iou(a, Box{3, 3, 3, 8}) == 0.0);
}

TEST_CASE("iou is symmetric and within [0, 1]") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Box a = RandomBox(rng, 0.5, 20, 40, 40);
    const Box b = RandomBox(rng, 0.5, 20, 40, 40);
    const double ab = Iou(a, b);
    CHECK(ab == Iou(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab == doctest::Approx(oracle::Iou(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("clip keeps boxes inside the map") {
  CHECK(Clip(Box{-5, -2, 8, 30}, 10, 20) == Box{0, 0, 8, 20});
  const Box outside = Clip(Box{12, 3, 15, 5}, 10, 20);
  CHECK_FALSE(outside.has_positive_area());
  CHECK(outside.x1 == 10.0);
}

TEST_CASE("box scaling keeps the center") {
  const Box b{2, 4, 10, 8};
  CHECK(b.Scaled(0.5) == Box{4, 5, 8, 7});
  CHECK(b.Scaled(1.0) == b);
  CHECK(b.Translated(1, -1) == Box{3, 3, 11, 7});
}

TEST_CASE("encode of a box against itself is zero and decode inverts it") {
  const Box ref{3, 4, 17, 12};
  const RegressionTarget t = Encode(ref, ref);
  CHECK(t == RegressionTarget{0, 0, 0, 0});
  const Box back = Decode(RegressionTarget{0, 0, 0, 0}, ref);
  CHECK(back.x1 == doctest::Approx(ref.x1));
  CHECK(back.y2 == doctest::Approx(ref.y2));
}

TEST_CASE("decode inverts encode on random pairs") {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Box gt = RandomBox(rng, 1, 50, 100, 100);
    const Box ref = RandomBox(rng, 1, 50, 100, 100);
    const Box back = Decode(Encode(gt, ref), ref);
    const double scale = std::max(gt.long_edge(), 1.0);
    CHECK(std::abs(back.x1 - gt.x1) <= 1e-5 * scale + 1e-5 * std::abs(gt.x1));
    CHECK(std::abs(back.y1 - gt.y1) <= 1e-5 * scale + 1e-5 * std::abs(gt.y1));
    CHECK(std::abs(back.x2 - gt.x2) <= 1e-5 * scale + 1e-5 * std::abs(gt.x2));
    CHECK(std::abs(back.y2 - gt.y2) <= 1e-5 * scale + 1e-5 * std::abs(gt.y2));
  }
}

TEST_CASE("encode rejects degenerate boxes") {
  CHECK_THROWS_AS(Encode(Box{0, 0, 1, 1}, Box{0, 0, 0, 1}),
                  DegenerateReferenceError);
  CHECK_THROWS_AS(Encode(Box{0, 0, 1, 0}, Box{0, 0, 1, 1}), DegenerateRoiError);
}

TEST_CASE("nms keeps the better of two identical boxes") {
  const std::vector<ScoredBox> one = {{{0, 0, 5, 5}, 0.3, 1}};
  CHECK(Nms(one, 0.5) == std::vector<std::size_t>{0});
  const std::vector<ScoredBox> two = {{{0, 0, 5, 5}, 0.8, 1},
                                      {{0, 0, 5, 5}, 0.9, 1}};
  CHECK(Nms(two, 0.5) == std::vector<std::size_t>{1});
  CHECK(Nms(std::vector<ScoredBox>{}, 0.5).empty());
}

TEST_CASE("nms breaks score ties by input order") {
  const std::vector<ScoredBox> boxes = {{{0, 0, 5, 5}, 0.5, 1},
                                        {{0, 0, 5, 5}, 0.5, 1},
                                        {{20, 20, 25, 25}, 0.5, 1}};
  CHECK(Nms(boxes, 0.5) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("nms matches the greedy oracle and keeps an antichain") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScoredBox> boxes;
    const auto n = 1 + rng.Below(60);
    for (std::uint64_t i = 0; i < n; ++i) {
      // Quantized scores exercise the tie rule.
      boxes.push_back({RandomBox(rng, 2, 20, 50, 50),
                       static_cast<double>(rng.Below(10)) / 10.0, 1});
    }
    const double t = rng.Uniform(0.05, 1.0);
    const auto kept = Nms(boxes, t);
    CHECK(kept == oracle::Nms(boxes, t));
    for (std::size_t a = 0; a < kept.size(); ++a) {
      for (std::size_t b = a + 1; b < kept.size(); ++b) {
        CHECK(Iou(boxes[kept[a]].box, boxes[kept[b]].box) <= t);
      }
    }
  }
}

TEST_CASE("nms validates the threshold") {
  const std::vector<ScoredBox> one = {{{0, 0, 5, 5}, 0.3, 1}};
  CHECK_THROWS(Nms(one, 0.0));
  CHECK_THROWS(Nms(one, 1.5));
}

TEST_CASE("anchor counts follow k * H * W") {
  const std::vector<double> scales = {128, 256, 512};
  const std::vector<double> ratios = {0.5, 1, 2};
  CHECK(GenerateAnchors(1, 1, scales, ratios, 16).size() == 9);
  CHECK(GenerateAnchors(2, 3, scales, ratios, 16).size() == 54);
}

TEST_CASE("anchors have the requested area and aspect") {
  const std::vector<double> scales = {32};
  const std::vector<double> ratios = {0.5, 2};
  const auto a = GenerateAnchors(1, 1, scales, ratios, 16);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a[k].area() == doctest::Approx(32.0 * 32.0));
    CHECK(a[k].height() / a[k].width() == doctest::Approx(ratios[k]));
    CHECK(a[k].center_x() == doctest::Approx(8.0));
    CHECK(a[k].center_y() == doctest::Approx(8.0));
  }
}

TEST_CASE("anchors are translation invariant across the grid") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = 1 + static_cast<std::int64_t>(rng.Below(6));
    const auto w = 1 + static_cast<std::int64_t>(rng.Below(6));
    const std::vector<double> scales = {rng.Uniform(4, 64), rng.Uniform(4, 64)};
    const std::vector<double> ratios = {rng.Uniform(0.3, 3),
                                        rng.Uniform(0.3, 3),
                                        rng.Uniform(0.3, 3)};
    const double stride = rng.Uniform(1, 32);
    const auto a = GenerateAnchors(h, w, scales, ratios, stride);
    const std::size_t k = scales.size() * ratios.size();
    REQUIRE(a.size() == k * static_cast<std::size_t>(h * w));
    for (std::int64_t i = 0; i < h; ++i) {
      for (std::int64_t j = 0; j < w; ++j) {
        for (std::size_t m = 0; m < k; ++m) {
          const Box& got = a[static_cast<std::size_t>(i * w + j) * k + m];
          const Box want = a[m].Translated(j * stride, i * stride);
          CHECK(got.x1 == doctest::Approx(want.x1));
          CHECK(got.y1 == doctest::Approx(want.y1));
          CHECK(got.x2 == doctest::Approx(want.x2));
          CHECK(got.y2 == doctest::Approx(want.y2));
        }
      }
    }
  }
}

TEST_CASE("label assignment of exact and disjoint anchors") {
  const std::vector<Box> anchors = {{0, 0, 10, 10}, {50, 50, 60, 60}};
  const std::vector<GroundTruth> gt = {{{0, 0, 10, 10}, 3}};
  const auto a = AssignLabels(anchors, gt, 0.7, 0.3);
  CHECK(a[0].label == 3);
  CHECK(a[0].gt_index == 0);
  CHECK(a[0].target == RegressionTarget{0, 0, 0, 0});
  CHECK(a[1].label == LabeledAssignment::kBackground);
  CHECK(a[1].gt_index == -1);
}

TEST_CASE("label assignment validates thresholds") {
  const std::vector<Box> anchors = {{0, 0, 10, 10}};
  const std::vector<GroundTruth> gt = {{{0, 0, 10, 10}, 1}};
  CHECK_THROWS(AssignLabels(anchors, gt, 0.3, 0.7));
}

// Exhaustive reference: thresholds on the best gt per anchor, then every gt
// forces the anchors attaining its best IoU.
std::vector<LabeledAssignment> AssignOracle(const std::vector<Box>& anchors,
                                            const std::vector<GroundTruth>& gt,
                                            double pos, double neg) {
  const std::size_t na = anchors.size();
  const std::size_t ng = gt.size();
  std::vector<std::vector<double>> iou(na, std::vector<double>(ng));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t g = 0; g < ng; ++g) {
      iou[i][g] = oracle::Iou(anchors[i], gt[g].box);
    }
  }
  std::vector<LabeledAssignment> out(na);
  std::vector<int> owner(na, -1);
  for (std::size_t i = 0; i < na; ++i) {
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
      if (best < 0 || iou[i][g] > best_iou) {
        best = static_cast<int>(g);
        best_iou = iou[i][g];
      }
    }
    out[i].max_iou = best_iou;
    if (best_iou >= pos) {
      owner[i] = best;
    } else if (best_iou < neg) {
      out[i].label = LabeledAssignment::kBackground;
    }
  }
  // Forced positives: argmax anchors of each gt. Among several gts forcing
  // the same anchor, the higher IoU wins, then the lower gt index.
  std::vector<int> forced(na, -1);
  for (std::size_t g = 0; g < ng; ++g) {
    double top = 0.0;
    for (std::size_t i = 0; i < na; ++i) top = std::max(top, iou[i][g]);
    if (top <= 0.0) continue;
    for (std::size_t i = 0; i < na; ++i) {
      if (iou[i][g] != top || owner[i] >= 0) continue;
      if (forced[i] < 0 || iou[i][g] > iou[i][static_cast<std::size_t>(forced[i])]) {
        forced[i] = static_cast<int>(g);
      }
    }
  }
  for (std::size_t i = 0; i < na; ++i) {
    const int g = owner[i] >= 0 ? owner[i] : forced[i];
    if (g < 0) continue;
    out[i].label = gt[static_cast<std::size_t>(g)].label;
    out[i].gt_index = g;
    out[i].target = Encode(gt[static_cast<std::size_t>(g)].box, anchors[i]);
  }
  return out;
}

TEST_CASE("label assignment matches the exhaustive oracle") {
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> scales = {8, 16};
    const std::vector<double> ratios = {0.5, 1, 2};
    const auto anchors = GenerateAnchors(4, 4, scales, ratios, 8);
    std::vector<GroundTruth> gt;
    const auto n = 1 + rng.Below(4);
    for (std::uint64_t g = 0; g < n; ++g) {
      gt.push_back({RandomBox(rng, 4, 24, 40, 40),
                    1 + static_cast<int>(rng.Below(3))});
    }
    const auto got = AssignLabels(anchors, gt, 0.7, 0.3);
    const auto want = AssignOracle(anchors, gt, 0.7, 0.3);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].label == want[i].label);
      CHECK(got[i].gt_index == want[i].gt_index);
      CHECK(got[i].max_iou == doctest::Approx(want[i].max_iou).epsilon(1e-12));
      if (got[i].label >= 1) CHECK(got[i].target == want[i].target);
    }
    // Every overlapped gt owns at least one positive.
    for (std::size_t g = 0; g < gt.size(); ++g) {
      bool overlapped = false;
      bool owned = false;
      for (std::size_t i = 0; i < anchors.size(); ++i) {
        overlapped |= oracle::Iou(anchors[i], gt[g].box) > 0;
        owned |= got[i].gt_index == static_cast<int>(g);
      }
      if (overlapped) CHECK(owned);
    }
  }
}

}  // namespace
}  // namespace actx
