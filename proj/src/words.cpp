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

#include "ncdyn/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>

#include "ncdyn/error.hpp"

namespace ncdyn {

namespace {

std::string render_list(std::span<const Index> entries) {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(entries[i]);
  }
  out += ')';
  return out;
}

}  // namespace

IndexTuple::IndexTuple(std::vector<Index> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorCode::Empty, "index tuple is empty");
}

std::string IndexTuple::to_string() const { return render_list(entries_); }

std::string Word::to_string() const { return render_list(entries_); }

Word make_word(std::vector<Index> entries) {
  if (entries.empty()) throw Error(ErrorCode::Empty, "word is empty");
  auto repeat = std::adjacent_find(entries.begin(), entries.end());
  if (repeat != entries.end()) {
    throw Error(ErrorCode::NeighborRepeat,
                "entry " + std::to_string(*repeat) + " repeated at position " +
                    std::to_string(repeat - entries.begin()) + " of " +
                    render_list(entries));
  }
  return Word(std::move(entries));
}

Word word_product(const Word &m, const Word &n) {
  std::vector<Index> out;
  out.reserve(m.size() + n.size());
  out.insert(out.end(), m.entries().begin(), m.entries().end());
  auto tail = n.entries().begin();
  if (m.back() == n.front()) ++tail;
  out.insert(out.end(), tail, n.entries().end());
  return make_word(std::move(out));
}

Word word_involution(const Word &m) {
  std::vector<Index> out(m.entries().rbegin(), m.entries().rend());
  return make_word(std::move(out));
}

Index word_height(const Word &m) {
  return *std::max_element(m.entries().begin(), m.entries().end());
}

Word word_shift(const Word &m, Index t) {
  std::vector<Index> out = m.entries();
  for (auto &x : out) x += t;
  return make_word(std::move(out));
}

std::vector<Index> parse_index_list(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.size() < 2 || compact.front() != '(' || compact.back() != ')') {
    throw Error(ErrorCode::Parse,
                "expected a parenthesised list, got '" + std::string(text) + "'");
  }
  std::string_view body(compact);
  body = body.substr(1, body.size() - 2);
  std::vector<Index> out;
  if (body.empty()) return out;
  while (true) {
    auto comma = body.find(',');
    auto token = body.substr(0, comma);
    Index value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::Parse, "bad index '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return out;
}

Word parse_word(std::string_view text) { return make_word(parse_index_list(text)); }

IndexTuple parse_index_tuple(std::string_view text) {
  return IndexTuple(parse_index_list(text));
}

std::ostream &operator<<(std::ostream &os, const Word &w) { return os << w.to_string(); }

std::ostream &operator<<(std::ostream &os, const IndexTuple &t) {
  return os << t.to_string();
}

}  // namespace ncdyn
