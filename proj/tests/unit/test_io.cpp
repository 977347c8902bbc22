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

#include "ncdyn/error.hpp"
#include "ncdyn/io.hpp"
#include "ncdyn/report.hpp"
#include "ncdyn/rng.hpp"

using namespace ncdyn;
using nlohmann::json;

TEST_CASE("matrix encoding round trips losslessly") {
  Rng rng(1);
  const Matrix m = random_gaussian_matrix(rng, 3, 2);
  CHECK((io::matrix_from_json(io::matrix_to_json(m)) - m).norm() == 0.0);
  CHECK((io::matrix_from_json(json::parse(io::format_matrix(m))) - m).norm() == 0.0);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("malformed matrices are parse errors") {
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[]")), Error);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), Error);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1]]")), Error);
}

TEST_CASE("channel files") {
  const Channel phi = random_channel(2, 3, 4, true, 1.0);
  const Channel back = io::channel_from_json(io::channel_to_json(phi));
  REQUIRE(back.kraus().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK((back.kraus()[i] - phi.kraus()[i]).norm() == 0.0);
  CHECK_THROWS_AS(io::channel_from_json(json::parse(R"({"d": 1, "kraus": [[[[2,0]]]]})")), Error);
  CHECK_THROWS_AS(io::channel_from_json(json::parse(R"({"kraus": []})")), Error);
}

TEST_CASE("symbols resolve by name, literal or real multiple of the unit") {
  const auto table = io::symbols_from_json(json::parse(R"({"d": 1, "matrices": {"a": [[[2, 1]]]}})"));
  CHECK(io::resolve_symbol("a", table, 1)(0, 0) == Complex(2, 1));
  CHECK(io::resolve_symbol(" [[[0,3]]] ", table, 1)(0, 0) == Complex(0, 3));
  CHECK(io::resolve_symbol("0.5", table, 1)(0, 0) == Complex(0.5, 0));
  CHECK_THROWS_AS(io::resolve_symbol("b", table, 1), Error);
  CHECK_THROWS_AS(io::resolve_symbol("[[[1,0]]]", table, 2), Error);
}

TEST_CASE("bracket and generator literals") {
  const auto m = io::parse_moment_literal(" [2, 6,3,4 ; a, b,c,d] ");
  CHECK(m.indices.entries() == std::vector<Index>{2, 6, 3, 4});
  CHECK(m.names == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK_THROWS_AS(io::parse_moment_literal("[1,2; a]"), Error);
  CHECK_THROWS_AS(io::parse_moment_literal("1,2; a,b"), Error);

  const auto g = io::parse_generator_literal("(0, 1) ; [a, [[[1,0],[0,0]],[[0,0],[1,0]]]]");
  CHECK(g.indices == std::vector<Index>{0, 1});
  REQUIRE(g.tensors.size() == 2);
  CHECK(g.tensors[0] == "a");
  CHECK(io::resolve_generator(g, {{"a", Matrix::Identity(2, 2)}}, 2).word() == make_word({0, 1}));
  CHECK_THROWS_AS(io::parse_generator_literal("(0,1) ; [a]"), Error);
}

TEST_CASE("report records") {
  CheckRecord r;
  r.name = "x";
  r.params = {{"d", 2}};
  r.residual = 1e-12;
  r.threshold = 1e-10;
  r.pass = true;
  r.seed = 5;
  Report report;
  report.records.push_back(r);
  r.name = "y";
  r.pass = false;
  r.residual = std::numeric_limits<double>::infinity();
  report.records.push_back(r);
  CHECK_FALSE(report.all_pass());
  CHECK(report.failing() == std::vector<std::string>{"y"});
  const auto j = report_to_json(report);
  CHECK(j["records"][0]["name"] == "x");
  CHECK(j["records"][1]["residual"].is_null());
  const std::vector<std::string> keys{"name", "params", "residual", "threshold", "pass", "seed", "elapsed_ms"};
  std::vector<std::string> got;
  for (const auto &[k, v] : j["records"][0].items()) got.push_back(k);
  CHECK(got == keys);
  CHECK(summary_line(report.records[0]).rfind("PASS x", 0) == 0);
}
