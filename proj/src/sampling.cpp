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

#include "ncdyn/sampling.hpp"

#include "ncdyn/error.hpp"

namespace ncdyn {

Word random_word(Rng &rng, Index max_letter, std::size_t length, std::optional<Index> first,
                 std::optional<Index> last) {
  if (length == 0) throw Error(ErrorCode::Config, "word length must be positive");
  std::vector<Index> letters;
  letters.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (i == 0 && first) {
      letters.push_back(*first);
      continue;
    }
    if (i + 1 == length && last) {
      letters.push_back(*last);
      continue;
    }
    std::vector<Index> allowed;
    for (Index x = 0; x <= max_letter; ++x) {
      if (!letters.empty() && letters.back() == x) continue;
      if (last && i + 2 == length && x == *last) continue;
      allowed.push_back(x);
    }
    if (allowed.empty()) throw Error(ErrorCode::Config, "no admissible letter");
    letters.push_back(allowed[rng.below(allowed.size())]);
  }
  return make_word(std::move(letters));
}

IndexTuple random_tuple(Rng &rng, Index max_letter, std::size_t max_length) {
  const std::size_t k = 1 + rng.below(max_length);
  std::vector<Index> out(k);
  for (auto &x : out) x = static_cast<Index>(rng.below(max_letter + 1));
  return IndexTuple(std::move(out));
}

Generator random_generator(Rng &rng, std::size_t d, Index max_letter, std::size_t max_length) {
  const std::size_t k = max_letter == 0 ? 1 : 1 + rng.below(max_length);
  Word w = random_word(rng, max_letter, k);
  std::vector<Matrix> tensors;
  for (std::size_t i = 0; i < k; ++i) tensors.push_back(random_unit_matrix(rng, d));
  return gen_make(w, std::move(tensors));
}

Generator random_bracketed_generator(Rng &rng, std::size_t d, Index max_letter,
                                     std::size_t max_length) {
  // admissible lengths: 1, or 3..max_length (a length-2 word cannot be (0,0))
  std::vector<std::size_t> lengths{1};
  if (max_letter > 0) {
    for (std::size_t l = 3; l <= max_length; ++l) lengths.push_back(l);
  }
  const std::size_t k = lengths[rng.below(lengths.size())];
  Word w = random_word(rng, max_letter, k, Index{0}, Index{0});
  std::vector<Matrix> tensors;
  for (std::size_t i = 0; i < k; ++i) tensors.push_back(random_unit_matrix(rng, d));
  return gen_make(w, std::move(tensors));
}

}  // namespace ncdyn
