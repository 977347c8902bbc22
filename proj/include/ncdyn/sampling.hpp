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

#include <optional>

#include "ncdyn/expectation.hpp"
#include "ncdyn/rng.hpp"
#include "ncdyn/words.hpp"

namespace ncdyn {

/// Random word of the given length with letters in {0..max_letter}; letters
/// are drawn uniformly from the values allowed by the neighbour constraint
/// (and by `first` / `last` when pinned). Throws Config when no such word
/// exists.
Word random_word(Rng &rng, Index max_letter, std::size_t length,
                 std::optional<Index> first = std::nullopt,
                 std::optional<Index> last = std::nullopt);

/// Random tuple (equal neighbours allowed) of length 1..max_length.
IndexTuple random_tuple(Rng &rng, Index max_letter, std::size_t max_length);

/// Generator with a random word of length 1..max_length and unit-norm
/// Gaussian tensors.
Generator random_generator(Rng &rng, std::size_t d, Index max_letter, std::size_t max_length);

/// Generator whose word starts and ends with 0 (an element of the hereditary
/// part A . l1 . A).
Generator random_bracketed_generator(Rng &rng, std::size_t d, Index max_letter,
                                     std::size_t max_length);

}  // namespace ncdyn
