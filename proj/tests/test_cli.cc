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


#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "actx/rng.h"
#include "actx/tensor.h"
#include "doctest.h"
#include "test_util.h"

#ifndef ACTX_CLI_PATH
#error "ACTX_CLI_PATH must name the actx binary"
#endif

namespace actx {
namespace {

namespace fs = std::filesystem;

class Workdir {
 public:
  Workdir() {
    dir_ = fs::temp_directory_path() /
           ("actx_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Workdir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string operator()(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  fs::path dir_;
};

const Workdir& Dir() {
  static const Workdir w;
  return w;
}

int Run(const std::string& args, const std::string& stderr_file = "") {
  std::string cmd = std::string(ACTX_CLI_PATH) + " " + args;
  cmd += " 2>" + (stderr_file.empty() ? std::string("/dev/null") : stderr_file);
  cmd += " >" + Dir()("stdout.txt");
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

void MakeInputs() {
  Rng rng(101);
  SaveFten(Dir()("f.ften"), testing::RandomTensor(rng, {4, 40, 40}));
  WriteFile(Dir()("rois.csv"),
            "# x1,y1,x2,y2\n10,10,20,22\n\n5,5,12,9,0.5,1\n");
}

TEST_CASE("cli usage errors exit with status 2") {
  CHECK(Run("") == 2);
  CHECK(Run("frobnicate") == 2);
  CHECK(Run("roipool --rois x.csv") == 2);
  CHECK(Run("gradcheck --op roipool --seed notanumber") == 2);
}

TEST_CASE("cli help exits cleanly") {
  CHECK(Run("--help") == 0);
  CHECK(Run("ctxmine --help") == 0);
}

TEST_CASE("cli reports missing inputs by path") {
  const std::string err = Dir()("err.txt");
  CHECK(Run("roipool --features /nonexistent/f.ften --rois /nonexistent/r.csv "
            "--out " + Dir()("o.ften"),
            err) == 1);
  CHECK(Slurp(err).find("/nonexistent/f.ften") != std::string::npos);
}

TEST_CASE("cli roi operators write stacked outputs") {
  MakeInputs();
  CHECK(Run("roipool --features " + Dir()("f.ften") + " --rois " +
            Dir()("rois.csv") + " --out " + Dir()("p.ften")) == 0);
  CHECK(LoadFten(Dir()("p.ften")).dims() == Shape{2, 4, 7, 7});
  CHECK(Run("roialign --features " + Dir()("f.ften") + " --rois " +
            Dir()("rois.csv") + " --ph 3 --pw 5 --out " + Dir()("a.ften")) == 0);
  CHECK(LoadFten(Dir()("a.ften")).dims() == Shape{2, 4, 3, 5});
  CHECK(Run("ctxmine --features " + Dir()("f.ften") + " --rois " +
            Dir()("rois.csv") + " --out " + Dir()("m.ften") + " --report " +
            Dir()("m.json")) == 0);
  CHECK(LoadFten(Dir()("m.ften")).dims() == Shape{2, 36, 7, 7});
  const auto j = nlohmann::json::parse(Slurp(Dir()("m.json")));
  CHECK(j["rois"].size() == 2);
  CHECK(j["rois"][0]["context"].size() == 8);
  CHECK(Run("variant --variant neigh8 --features " + Dir()("f.ften") +
            " --rois " + Dir()("rois.csv") + " --out " + Dir()("v.ften")) == 0);
  CHECK(LoadFten(Dir()("v.ften")).dims() == Shape{2, 36, 7, 7});
}

TEST_CASE("cli names the failing roi") {
  MakeInputs();
  WriteFile(Dir()("bad.csv"), "1,1,5,5\n100,100,120,120\n");
  const std::string err = Dir()("err2.txt");
  CHECK(Run("roipool --features " + Dir()("f.ften") + " --rois " +
            Dir()("bad.csv") + " --out " + Dir()("x.ften"), err) == 1);
  CHECK(Slurp(err).find("roi 1") != std::string::npos);
}

TEST_CASE("cli enumerates an interior cell") {
  CHECK(Run("enumerate --cell 100,100,140,130 --out " + Dir()("e.csv")) == 0);
  const std::string text = Slurp(Dir()("e.csv"));
  CHECK(text.find("# candidates 187 of 400") != std::string::npos);
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  CHECK(rows == 187);
}

TEST_CASE("cli gradcheck passes and reports") {
  CHECK(Run("gradcheck --op roialign --seed 1 --out " + Dir()("g.json")) == 0);
  const auto j = nlohmann::json::parse(Slurp(Dir()("g.json")));
  CHECK(j["passed"] == true);
  CHECK(Run("gradcheck --op nothing") == 1);
}

TEST_CASE("cli nms and anchors") {
  WriteFile(Dir()("s.csv"), "0,0,10,10,0.9\n1,1,10,10,0.8\n20,20,30,30,0.7\n");
  CHECK(Run("nms --rois " + Dir()("s.csv") + " --iou 0.5 --out " +
            Dir()("k.csv")) == 0);
  CHECK(Slurp(Dir()("k.csv")) == "0,0,10,10,0.9,0\n20,20,30,30,0.7,0\n");
  CHECK(Run("nms --rois " + Dir()("s.csv") + " --iou 0") == 1);
  CHECK(Run("anchors --height 2 --width 3 --out " + Dir()("an.csv")) == 0);
  std::istringstream in(Slurp(Dir()("an.csv")));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) rows += !line.empty() && line[0] != '#';
  CHECK(rows == 2 * 3 * 9);
}

TEST_CASE("cli attack batch is deterministic across job counts") {
  const std::string in = Dir()("imgs");
  fs::create_directories(in);
  Rng rng(102);
  for (int i = 0; i < 4; ++i) {
    const std::string stem = in + "/img" + std::to_string(i);
    SaveFten(stem + ".ften", testing::RandomTensor(rng, {3, 24, 24}));
    WriteFile(stem + ".csv", "2,2,12,12\n10,8,22,20\n");
  }
  CHECK(Run("attack --kind random --seed 5 --in-dir " + in + " --out-dir " +
            Dir()("o1") + " --jobs 1") == 0);
  CHECK(Run("attack --kind random --seed 5 --in-dir " + in + " --out-dir " +
            Dir()("o4") + " --jobs 4") == 0);
  CHECK(Slurp(Dir()("o1") + "/manifest.json") ==
        Slurp(Dir()("o4") + "/manifest.json"));
  for (int i = 0; i < 4; ++i) {
    const std::string f = "/img" + std::to_string(i) + ".ften";
    CHECK(Slurp(Dir()("o1") + f) == Slurp(Dir()("o4") + f));
  }
  CHECK(Run("attack --kind adversarial --in-dir " + in + " --out-dir " +
            Dir()("o5")) == 1);
}

}  // namespace
}  // namespace actx
