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

#include <string>

namespace actx {

nlohmann::ordered_json BoxToJson(const Box& b) {
  return nlohmann::ordered_json::array({b.x1, b.y1, b.x2, b.y2});
}

nlohmann::ordered_json MinedToJson(const MinedRoIFeature& mined) {
  nlohmann::ordered_json j;
  j["object"] = BoxToJson(mined.object_map.source_roi);
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const MinedContext& sel : mined.selected) {
    nlohmann::ordered_json c;
    c["direction"] = std::string(DirectionName(sel.direction));
    c["box"] = BoxToJson(sel.box);
    c["clipped"] = BoxToJson(sel.clipped);
    c["score"] = sel.score;
    c["pool_size"] = sel.pool_size;
    c["candidate_index"] = sel.candidate_index;
    c["fallback"] = sel.fallback;
    cells.push_back(std::move(c));
  }
  j["context"] = std::move(cells);
  return j;
}

nlohmann::ordered_json GradCheckToJson(const GradCheckReport& report) {
  nlohmann::ordered_json j;
  j["max_abs_error"] = report.max_abs_error;
  j["max_rel_error"] = report.max_rel_error;
  j["worst_index"] = report.worst_index;
  j["step"] = report.step;
  j["probed"] = report.probed;
  j["skipped"] = report.skipped;
  return j;
}

nlohmann::ordered_json TrainResultToJson(const TrainResult& result) {
  nlohmann::ordered_json j;
  j["accuracy"] = result.accuracy;
  j["loss_trace"] = result.loss_trace;
  j["selection_overlap"] = result.selection_overlap;
  j["train_count"] = result.train_count;
  j["test_count"] = result.test_count;
  return j;
}

}  // namespace actx
