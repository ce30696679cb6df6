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


#include "actx/report.h"

#include "actx/ctx_mining.h"
#include "actx/synth.h"
#include "doctest.h"
#include "test_util.h"

namespace actx {
namespace {

TEST_CASE("boxes serialize as four-element arrays") {
  const auto j = BoxToJson(Box{1, 2.5, 3, 4});
  CHECK(j.dump() == "[1.0,2.5,3.0,4.0]");
}

TEST_CASE("mined features report one entry per cell") {
  Rng rng(91);
  const Tensor f = testing::RandomTensor(rng, {2, 30, 30});
  const MiningConfig cfg = DefaultSynthMining();
  auto scorer = ContextScorer::Zeros(2, 4, 4);
  for (float& w : scorer.weights) w = static_cast<float>(rng.Uniform(-0.1, 0.1));
  const MinedRoIFeature m = MineContext(f, Box{10, 10, 18, 19}, scorer, cfg);
  const auto j = MinedToJson(m);
  CHECK(j["object"].dump() == "[10.0,10.0,18.0,19.0]");
  REQUIRE(j["context"].size() == 8);
  CHECK(j["context"][0]["direction"] == "left-top");
  CHECK(j["context"][7]["direction"] == "right-bottom");
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(j["context"][i]["pool_size"] == m.selected[i].pool_size);
    CHECK(j["context"][i]["candidate_index"] == m.selected[i].candidate_index);
  }
}

TEST_CASE("gradient reports carry the probe counts") {
  GradCheckReport r;
  r.max_rel_error = 2e-4;
  r.probed = 10;
  r.skipped = 1;
  const auto j = GradCheckToJson(r);
  CHECK(j["probed"] == 10);
  CHECK(j["skipped"] == 1);
  CHECK(j["max_rel_error"] == 2e-4);
}

}  // namespace
}  // namespace actx
