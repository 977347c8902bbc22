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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncdyn {

using Index = std::uint32_t;

/// A nonempty tuple of nonnegative integers with no adjacency constraint.
/// These index the moment polynomials, which are defined for every tuple.
class IndexTuple {
 public:
  /// Throws Error{Empty} on an empty list.
  explicit IndexTuple(std::vector<Index> entries);

  const std::vector<Index> &entries() const noexcept { return entries_; }
  std::span<const Index> view() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Index operator[](std::size_t i) const { return entries_[i]; }

  std::string to_string() const;

  friend bool operator==(const IndexTuple &, const IndexTuple &) = default;
  friend auto operator<=>(const IndexTuple &, const IndexTuple &) = default;

 private:
  std::vector<Index> entries_;
};

/// An element of the index *-semigroup: a nonempty tuple whose neighbouring
/// entries are distinct. Immutable; equality is entrywise.
class Word {
 public:
  const std::vector<Index> &entries() const noexcept { return entries_; }
  std::span<const Index> view() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Index operator[](std::size_t i) const { return entries_[i]; }
  Index front() const { return entries_.front(); }
  Index back() const { return entries_.back(); }

  IndexTuple as_tuple() const { return IndexTuple(entries_); }
  std::string to_string() const;

  friend bool operator==(const Word &, const Word &) = default;
  friend auto operator<=>(const Word &, const Word &) = default;

 private:
  friend Word make_word(std::vector<Index> entries);
  explicit Word(std::vector<Index> entries) : entries_(std::move(entries)) {}

  std::vector<Index> entries_;
};

/// Throws Error{Empty} or Error{NeighborRepeat}.
Word make_word(std::vector<Index> entries);

/// Conditional concatenation: when m ends with the letter n starts with, that
/// letter is written once.
Word word_product(const Word &m, const Word &n);
Word word_involution(const Word &m);
Index word_height(const Word &m);
Word word_shift(const Word &m, Index t);

/// Parses "(n1, n2, ..., nk)"; whitespace is ignored. Throws Error{Parse}.
std::vector<Index> parse_index_list(std::string_view text);
Word parse_word(std::string_view text);
IndexTuple parse_index_tuple(std::string_view text);

std::ostream &operator<<(std::ostream &os, const Word &w);
std::ostream &operator<<(std::ostream &os, const IndexTuple &t);

}  // namespace ncdyn
