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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ncdyn/algebra.hpp"
#include "ncdyn/expectation.hpp"
#include "ncdyn/words.hpp"

namespace ncdyn::io {

using json = nlohmann::json;

/// Matrix encoding: a list of rows, each entry a [real, imaginary] pair.
json matrix_to_json(const Matrix &m);
/// Throws Error{Parse} on malformed or ragged input.
Matrix matrix_from_json(const json &j);

/// Same encoding as text, every number printed with 17 significant digits.
std::string format_matrix(const Matrix &m);
std::string format_double(double x);

/// Channel file: {"d": int, "kraus": [matrix, ...]}.
json channel_to_json(const Channel &phi);
Channel channel_from_json(const json &j, double tol_cp = kDefaultTolCp);
Channel load_channel(const std::filesystem::path &path, double tol_cp = kDefaultTolCp);

json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

/// Matrices file: {"d": int, "matrices": {"name": matrix, ...}}.
using SymbolTable = std::map<std::string, Matrix, std::less<>>;
SymbolTable symbols_from_json(const json &j);
SymbolTable load_symbols(const std::filesystem::path &path);

/// Resolves a tensor slot: a bound name, an inline matrix literal, or a real
/// number r meaning r times the d x d identity.
Matrix resolve_symbol(std::string_view token, const SymbolTable &symbols, std::size_t d);

struct MomentLiteral {
  IndexTuple indices;
  std::vector<std::string> names;
};

/// "[n1,...,nk; name1,...,namek]".
MomentLiteral parse_moment_literal(std::string_view text);

struct GeneratorLiteral {
  std::vector<Index> indices;
  std::vector<std::string> tensors;
};

/// "(n1,...,nk) ; [M1, ..., Mk]" where each M is a name or a matrix literal.
GeneratorLiteral parse_generator_literal(std::string_view text);

Generator resolve_generator(const GeneratorLiteral &literal, const SymbolTable &symbols,
                            std::size_t d);

}  // namespace ncdyn::io
