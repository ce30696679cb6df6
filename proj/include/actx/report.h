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

#ifndef ACTX_REPORT_H_
#define ACTX_REPORT_H_

#include <json.hpp>

#include "actx/ctx_mining.h"
#include "actx/geometry.h"
#include "actx/gradcheck.h"
#include "actx/synth.h"

namespace actx {

// [x1, y1, x2, y2]
nlohmann::ordered_json BoxToJson(const Box& b);

// Per-RoI selection record: object box, and per direction the selected box,
// its score, pool size and candidate index (-1 with "fallback": true when
// the object map was substituted).
nlohmann::ordered_json MinedToJson(const MinedRoIFeature& mined);

nlohmann::ordered_json GradCheckToJson(const GradCheckReport& report);

nlohmann::ordered_json TrainResultToJson(const TrainResult& result);

}  // namespace actx

#endif  // ACTX_REPORT_H_
