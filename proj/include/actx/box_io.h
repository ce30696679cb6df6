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

#ifndef ACTX_BOX_IO_H_
#define ACTX_BOX_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "actx/geometry.h"

namespace actx {

// RoI list files: UTF-8 lines "x1,y1,x2,y2[,score[,class]]". A '#' starts a
// comment that runs to end of line; blank lines are skipped. Missing score
// reads as 0 and missing class as 0.
std::vector<ScoredBox> ParseRoiList(std::istream& in,
                                    const std::string& source = "<stream>");
std::vector<ScoredBox> LoadRoiList(const std::filesystem::path& path);

// Shortest round-trip decimal form of `v`.
std::string FormatNumber(double v);

std::string FormatBox(const Box& b);

enum class RoiFields { kBox, kBoxScore, kBoxScoreClass };

void WriteRoiList(std::ostream& out, std::span<const ScoredBox> boxes,
                  RoiFields fields);

// Parses "a,b,c,..." into exactly `expected` numbers (any count if 0).
std::vector<double> ParseNumberList(const std::string& text,
                                    std::size_t expected = 0);

}  // namespace actx

#endif  // ACTX_BOX_IO_H_
