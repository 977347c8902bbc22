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

// Reference implementations used only by the tests. They share no code path
// with the library beyond the Matrix type and the Kraus list.

#include <vector>

#include "ncdyn/algebra.hpp"

namespace ncdyn::testing {

inline Matrix kraus_apply(const std::vector<Matrix> &kraus, const Matrix &a) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto &v : kraus) out += v.adjoint() * a * v;
  return out;
}

/// Bracket value by the other reduction order: split at the rightmost zero,
/// and when no zero is left peel one power of phi at a time.
inline Matrix oracle_moment(const std::vector<Matrix> &kraus, std::vector<unsigned> n,
                            std::vector<Matrix> a) {
  const auto d = kraus.front().rows();
  if (n.empty()) return Matrix::Identity(d, d);
  for (std::size_t p = n.size(); p-- > 0;) {
    if (n[p] != 0) continue;
    std::vector<unsigned> nl(n.begin(), n.begin() + static_cast<long>(p));
    std::vector<unsigned> nr(n.begin() + static_cast<long>(p) + 1, n.end());
    std::vector<Matrix> al(a.begin(), a.begin() + static_cast<long>(p));
    std::vector<Matrix> ar(a.begin() + static_cast<long>(p) + 1, a.end());
    return oracle_moment(kraus, nl, al) * a[p] * oracle_moment(kraus, nr, ar);
  }
  for (auto &x : n) --x;
  return kraus_apply(kraus, oracle_moment(kraus, n, a));
}

inline Matrix plain_product(const std::vector<Matrix> &a) {
  Matrix out = Matrix::Identity(a.front().rows(), a.front().cols());
  for (const auto &m : a) out = out * m;
  return out;
}

inline double smallest_eigenvalue(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double opnorm(const Matrix &m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace ncdyn::testing
