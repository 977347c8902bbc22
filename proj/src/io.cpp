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

#include "ncdyn/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "ncdyn/error.hpp"

namespace ncdyn::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on commas outside any brackets.
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[' || s[i] == '(') ++depth;
    if (s[i] == ']' || s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::optional<double> parse_real(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

json matrix_to_json(const Matrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json &j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "matrix must be a nonempty list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorCode::Parse, "matrix rows must be nonempty lists");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorCode::Parse, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      const json &entry = j[i][k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw Error(ErrorCode::Parse, "matrix entries must be [real, imaginary] pairs");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_matrix(const Matrix &m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ',';
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += '[' + format_double(m(i, j).real()) + ',' + format_double(m(i, j).imag()) + ']';
    }
    out += ']';
  }
  return out + "]";
}

json channel_to_json(const Channel &phi) {
  json kraus = json::array();
  for (const auto &v : phi.kraus()) kraus.push_back(matrix_to_json(v));
  return json{{"d", phi.dim()}, {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const json &j, double tol_cp) {
  if (!j.is_object() || !j.contains("d") || !j.contains("kraus") || !j["d"].is_number_unsigned() ||
      !j["kraus"].is_array()) {
    throw Error(ErrorCode::Parse, "channel must be an object with integer 'd' and list 'kraus'");
  }
  std::vector<Matrix> kraus;
  for (const auto &k : j["kraus"]) kraus.push_back(matrix_from_json(k));
  return Channel::from_kraus(j["d"].get<std::size_t>(), std::move(kraus), tol_cp);
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Config, "cannot write " + path.string());
  out << text;
}

Channel load_channel(const std::filesystem::path &path, double tol_cp) {
  return channel_from_json(read_json_file(path), tol_cp);
}

SymbolTable symbols_from_json(const json &j) {
  if (!j.is_object() || !j.contains("matrices") || !j["matrices"].is_object()) {
    throw Error(ErrorCode::Parse, "matrices file must contain a 'matrices' object");
  }
  SymbolTable out;
  for (const auto &[name, value] : j["matrices"].items()) out.emplace(name, matrix_from_json(value));
  if (j.contains("d")) {
    const auto d = static_cast<Eigen::Index>(j["d"].get<std::size_t>());
    for (const auto &[name, m] : out) {
      if (m.rows() != d || m.cols() != d) {
        throw Error(ErrorCode::ShapeMismatch, "matrix '" + name + "' does not match d");
      }
    }
  }
  return out;
}

SymbolTable load_symbols(const std::filesystem::path &path) {
  return symbols_from_json(read_json_file(path));
}

Matrix resolve_symbol(std::string_view token, const SymbolTable &symbols, std::size_t d) {
  const std::string name = trim(token);
  const auto n = static_cast<Eigen::Index>(d);
  if (auto it = symbols.find(name); it != symbols.end()) return it->second;
  if (!name.empty() && name.front() == '[') {
    json parsed;
    try {
      parsed = json::parse(name);
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::Parse, "bad matrix literal: " + std::string(e.what()));
    }
    Matrix m = matrix_from_json(parsed);
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::ShapeMismatch, "literal is not d x d");
    return m;
  }
  if (auto value = parse_real(name)) return Matrix::Identity(n, n) * *value;
  throw Error(ErrorCode::Parse, "unbound symbol '" + name + "'");
}

MomentLiteral parse_moment_literal(std::string_view text) {
  const std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw Error(ErrorCode::Parse, "expected [n1,...,nk; a1,...,ak]");
  }
  const std::string_view inner = std::string_view(body).substr(1, body.size() - 2);
  const auto semi = inner.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorCode::Parse, "missing ';' in bracket literal");
  std::vector<Index> indices = parse_index_list("(" + std::string(inner.substr(0, semi)) + ")");
  std::vector<std::string> names = split_top_level(inner.substr(semi + 1));
  for (const auto &n : names) {
    if (n.empty()) throw Error(ErrorCode::Parse, "empty argument name");
  }
  if (indices.size() != names.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(indices.size()) + " indices but " +
                                               std::to_string(names.size()) + " names");
  }
  return {IndexTuple(std::move(indices)), std::move(names)};
}

GeneratorLiteral parse_generator_literal(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorCode::Parse, "expected '(n1,...) ; [M1,...]'");
  GeneratorLiteral out;
  out.indices = parse_index_list(text.substr(0, semi));
  const std::string list = trim(text.substr(semi + 1));
  if (list.size() < 2 || list.front() != '[' || list.back() != ']') {
    throw Error(ErrorCode::Parse, "tensor list must be bracketed");
  }
  out.tensors = split_top_level(std::string_view(list).substr(1, list.size() - 2));
  if (out.indices.size() != out.tensors.size()) {
    throw Error(ErrorCode::LengthMismatch, "word and tensor list lengths differ");
  }
  return out;
}

Generator resolve_generator(const GeneratorLiteral &literal, const SymbolTable &symbols,
                            std::size_t d) {
  std::vector<Matrix> tensors;
  for (const auto &t : literal.tensors) tensors.push_back(resolve_symbol(t, symbols, d));
  return gen_make(IndexTuple(literal.indices), std::move(tensors));
}

}  // namespace ncdyn::io
