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

#include <cstdint>
#include <optional>
#include <random>

#include "ncdyn/algebra.hpp"

namespace ncdyn {

/// Deterministic random source shared by every seeded routine.
///
/// The engine is std::mt19937_64 (MT19937-64, fully specified by the C++
/// standard). Uniforms use the top 53 bits of one draw, u = (x >> 11) * 2^-53.
/// Normals come from the Box-Muller transform on (1 - u1, u2), emitting the
/// cosine branch first and caching the sine branch. A complex normal is
/// (z_re + i z_im) / sqrt(2), drawn real part first. Matrices are filled in
/// column-major order. Integers below n are x mod n.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double normal();
  Complex complex_normal();
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

Matrix random_gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols);

/// Gaussian matrix rescaled to unit operator norm.
Matrix random_unit_matrix(Rng &rng, std::size_t d);

/// Hermitian positive semidefinite d x d matrix G^* G / ||G^* G||.
Matrix random_psd_matrix(Rng &rng, std::size_t d);

}  // namespace ncdyn
