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

#include "actx/box_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "actx/error.h"

namespace actx {
namespace {

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool ParseDouble(const std::string& text, double& out) {
  const std::string t = Trim(text);
  if (t.empty()) return false;
  const char* begin = t.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<ScoredBox> ParseRoiList(std::istream& in,
                                    const std::string& source) {
  std::vector<ScoredBox> boxes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto where = source + ":" + std::to_string(line_no);
    const auto fields = Split(line, ',');
    if (fields.size() < 4 || fields.size() > 6) {
      throw FormatError(where + ": expected 4 to 6 comma-separated fields, got " +
                        std::to_string(fields.size()));
    }
    double v[5] = {0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < std::min<std::size_t>(fields.size(), 5); ++i) {
      if (!ParseDouble(fields[i], v[i])) {
        throw FormatError(where + ": field " + std::to_string(i + 1) +
                          " is not a finite number");
      }
    }
    ScoredBox b;
    b.box = {v[0], v[1], v[2], v[3]};
    if (b.box.x2 < b.box.x1 || b.box.y2 < b.box.y1) {
      throw FormatError(where + ": box corners are inverted");
    }
    b.score = v[4];
    if (fields.size() == 6) {
      const std::string t = Trim(fields[5]);
      int label = 0;
      const auto [ptr, ec] =
          std::from_chars(t.data(), t.data() + t.size(), label);
      if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw FormatError(where + ": class field is not an integer");
      }
      b.label = label;
    }
    boxes.push_back(b);
  }
  return boxes;
}

std::vector<ScoredBox> LoadRoiList(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return ParseRoiList(in, path.string());
}

std::string FormatNumber(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatBox(const Box& b) {
  return FormatNumber(b.x1) + "," + FormatNumber(b.y1) + "," +
         FormatNumber(b.x2) + "," + FormatNumber(b.y2);
}

void WriteRoiList(std::ostream& out, std::span<const ScoredBox> boxes,
                  RoiFields fields) {
  for (const ScoredBox& b : boxes) {
    out << FormatBox(b.box);
    if (fields != RoiFields::kBox) out << "," << FormatNumber(b.score);
    if (fields == RoiFields::kBoxScoreClass) out << "," << b.label;
    out << "\n";
  }
}

std::vector<double> ParseNumberList(const std::string& text,
                                    std::size_t expected) {
  std::vector<double> values;
  for (const auto& f : Split(text, ',')) {
    double v = 0.0;
    if (!ParseDouble(f, v)) {
      throw FormatError("'" + text + "' is not a comma-separated number list");
    }
    values.push_back(v);
  }
  if (expected != 0 && values.size() != expected) {
    throw FormatError("'" + text + "' must have " + std::to_string(expected) +
                      " values");
  }
  return values;
}

}  // namespace actx
