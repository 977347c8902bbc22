// Copyright 2026 The ncdyn Authors
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

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ncdyn/cli.hpp"
#include "ncdyn/io.hpp"
#include "ncdyn/suite.hpp"

using namespace ncdyn;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "ncdyn_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path &p, const std::string &text) {
  std::ofstream(p) << text;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("render") {
  CHECK(run({"render", "[2,6,3,4; a,b,c,d]"}).out == "phi^2(a*phi(phi^3(b)*c*phi(d)))\n");
  CHECK(run({"render", "[0; a]"}).out == "a\n");
  CHECK(run({"render", "[1,1; a,b]"}).out == "phi(a*b)\n");
  const Run bad = run({"render", "[1,1; a]"});
  CHECK(bad.code == kExitUsage);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  CHECK(run({"dilate", "--N", "x"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("eval with a scalar channel file") {
  const auto dir = scratch();
  write(dir / "half.json", R"({"d": 1, "kraus": [[[[0.7071067811865476, 0]]]]})");
  const Run r = run({"eval", "--channel", (dir / "half.json").string(), "[1,0,1; 1,1,1]"});
  CHECK(r.code == kExitOk);
  const auto value = nlohmann::json::parse(r.out);
  CHECK(std::abs(value[0][0][0].get<double>() - 0.25) < 1e-15);
  CHECK(run({"eval", "--channel", (dir / "half.json").string(), "[1,0; 1,1,1]"}).code == kExitUsage);
  CHECK(run({"eval", "--channel", (dir / "missing.json").string(), "[0; 1]"}).code == kExitUsage);
}

TEST_CASE("eval with named matrices under the identity channel") {
  const auto dir = scratch();
  write(dir / "id.json", R"({"d": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]]]})");
  write(dir / "mats.json",
        R"({"d": 2, "matrices": {"a": [[[0,0],[1,0]],[[0,0],[0,0]]], "b": [[[0,0],[0,0]],[[1,0],[0,0]]]}})");
  const Run r = run({"eval", "--channel", (dir / "id.json").string(), "--matrices",
                     (dir / "mats.json").string(), "[3,1; a,b]"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "[[[1,0],[0,0]],[[0,0],[0,0]]]\n");
}

TEST_CASE("gram and factor") {
  const Run g = run({"gram", "--d", "1", "--r", "1", "--lambda", "0.5", "--gen", "(0);[1]", "--gen", "(1);[1]"});
  CHECK(g.code == kExitOk);
  CHECK(g.out.find("min_eigenvalue=0.190983005625") != std::string::npos);
  const Run flat = run({"factor", "--d", "2", "--unital", "--gen", "(0);[1]"});
  CHECK(flat.code == kExitUsage);
  CHECK(flat.err.find("HeightZero") != std::string::npos);
  const Run f = run({"factor", "--d", "2", "--unital", "--gen", "(0,1);[1,2]", "--gen", "(2);[1]"});
  CHECK(f.code == kExitOk);
  CHECK(f.out.find("PASS factor.key_lemma") != std::string::npos);
}

TEST_CASE("dilate") {
  const auto dir = scratch();
  const Run r = run({"dilate", "--d", "2", "--N", "2", "--L", "2", "--seed", "7", "--unital", "--out",
                     (dir / "dilate.json").string()});
  CHECK(r.code == kExitOk);
  const auto report = io::read_json_file(dir / "dilate.json");
  bool found = false;
  for (const auto &rec : report["records"]) {
    if (rec["name"] == "dilate.moment_formula") {
      found = true;
      CHECK(rec["residual"].get<double>() < 1e-8);
      CHECK(rec["params"]["accepted"].get<double>() >= 100);
    }
  }
  CHECK(found);
}

TEST_CASE("suite configuration errors") {
  const auto dir = scratch();
  write(dir / "lambda.json", R"({"channel": {"random": {"d": 2, "r": 2, "unital": false, "lambda": 1.5}}})");
  const Run r = run({"suite", "--config", (dir / "lambda.json").string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("NotContractive") != std::string::npos);
  write(dir / "trials.json", R"({"trials": 0})");
  CHECK(run({"suite", "--config", (dir / "trials.json").string()}).code == kExitUsage);
  write(dir / "tol.json", R"({"tolerances": {"gram": -1}})");
  CHECK(run({"suite", "--config", (dir / "tol.json").string()}).code == kExitUsage);
  write(dir / "broken.json", "{");
  CHECK(run({"suite", "--config", (dir / "broken.json").string()}).code == kExitUsage);
}

TEST_CASE("suite runs green and is deterministic") {
  const auto dir = scratch();
  write(dir / "small.json",
        R"({"channel": {"random": {"d": 2, "r": 2, "seed": 3, "unital": true}},
            "truncation": {"N": 2, "L": 2}, "trials": 5, "dilation_trials": 60, "seed": 9,
            "out": "small_report.json"})");
  const Run first = run({"suite", "--config", (dir / "small.json").string()});
  CHECK(first.code == kExitOk);
  CHECK(first.out.find("FAIL") == std::string::npos);
  const std::string a = slurp(dir / "small_report.json");
  CHECK(run({"suite", "--config", (dir / "small.json").string()}).code == kExitOk);
  const std::string b = slurp(dir / "small_report.json");
  const std::regex elapsed(R"("elapsed_ms": [^,\n]*)");
  CHECK(std::regex_replace(a, elapsed, "") == std::regex_replace(b, elapsed, ""));
  CHECK(derive_seed(9, 2, 3) == 9 + 2000000 + 3);
}
