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

#include <cmath>
#include <limits>

#include "ncdyn/error.hpp"
#include "ncdyn/expectation.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/rng.hpp"
#include "ncdyn/sampling.hpp"
#include "oracle.hpp"

using namespace ncdyn;

namespace {

Matrix scalar(double x) { return Matrix::Constant(1, 1, x); }

std::vector<Matrix> unit_mats(Rng &rng, std::size_t k, std::size_t d) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_unit_matrix(rng, d));
  return out;
}

}  // namespace

TEST_CASE("gen_make merges equal neighbours") {
  Rng rng(1);
  const auto m = unit_mats(rng, 4, 2);
  const Generator g = gen_make(IndexTuple({1, 1, 0, 0}), m);
  CHECK(g.word() == make_word({1, 0}));
  REQUIRE(g.size() == 2);
  CHECK((g.tensors()[0] - m[0] * m[1]).norm() < 1e-15);
  CHECK((g.tensors()[1] - m[2] * m[3]).norm() < 1e-15);
  CHECK_THROWS_AS(gen_make(IndexTuple({0, 1}), {m[0]}), Error);
}

TEST_CASE("expectation of a merged generator equals the unmerged bracket") {
  const Channel phi = random_channel(2, 2, 5, false, 0.7);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const IndexTuple n = random_tuple(rng, 3, 5);
    const auto mats = unit_mats(rng, n.size(), 2);
    const std::vector<unsigned> raw(n.entries().begin(), n.entries().end());
    CHECK((expectation_E0(gen_make(n, mats), phi) - testing::oracle_moment(phi.kraus(), raw, mats)).norm() <
          1e-12);
  }
}

TEST_CASE("product, involution and shift act on words and tensors") {
  Rng rng(3);
  const auto m = unit_mats(rng, 4, 2);
  const Generator g = gen_make(make_word({0, 1}), {m[0], m[1]});
  const Generator h = gen_make(make_word({1, 2}), {m[2], m[3]});
  const Generator gh = gen_product(g, h);
  CHECK(gh.word() == make_word({0, 1, 2}));
  CHECK((gh.tensors()[1] - m[1] * m[2]).norm() < 1e-15);
  const Generator gs = gen_involution(g);
  CHECK(gs.word() == make_word({1, 0}));
  CHECK((gs.tensors()[0] - m[1].adjoint()).norm() == 0.0);
  CHECK(gen_shift(g, 2).word() == make_word({2, 3}));
  CHECK(gen_height(h) == 2);
  CHECK(gen_distance(g, h) == std::numeric_limits<double>::infinity());
  CHECK(gen_distance(g, g) == 0.0);
}

TEST_CASE("expectation identities on random generators") {
  const Channel phi = random_channel(2, 3, 6, true, 1.0);
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const Generator g = random_generator(rng, 2, 3, 4);
    const Matrix eg = expectation_E0(g, phi);
    const Matrix a = random_unit_matrix(rng, 2);
    CHECK((expectation_E0(gen_shift(g, 1), phi) - phi.apply(eg)).norm() < 1e-12);
    CHECK((expectation_E0(gen_product(gen_scalar(a), g), phi) - a * eg).norm() < 1e-12);
    CHECK((expectation_E0(gen_involution(g), phi) - eg.adjoint()).norm() < 1e-12);
    const Generator x = random_bracketed_generator(rng, 2, 3, 4);
    const Generator y = random_bracketed_generator(rng, 2, 3, 4);
    CHECK(x.word().front() == 0);
    CHECK(x.word().back() == 0);
    CHECK((expectation_E0(gen_product(x, y), phi) - expectation_E0(x, phi) * expectation_E0(y, phi)).norm() <
          1e-12);
  }
}

TEST_CASE("finite sections are linear in their terms") {
  const Channel phi = random_channel(2, 2, 7, true, 1.0);
  Rng rng(5);
  const Generator g = random_generator(rng, 2, 2, 3);
  const Generator h = random_generator(rng, 2, 2, 3);
  FiniteSection f({g, h});
  CHECK((expectation_E0(f, phi) - expectation_E0(g, phi) - expectation_E0(h, phi)).norm() < 1e-13);
  const FiniteSection ff = f.adjoint() * f;
  CHECK(ff.terms().size() == 4);
  CHECK(testing::smallest_eigenvalue(expectation_E0(ff, phi)) > -1e-12);
  CHECK((expectation_E0(f.shifted(1), phi) - phi.apply(expectation_E0(f, phi))).norm() < 1e-13);
  CHECK(f.l1_norm_bound() > 0.0);
}

TEST_CASE("Gram matrix of the scalar two-generator family") {
  const Channel half = scalar_channel(1, 0.5);
  const std::vector<Generator> us{gen_make(make_word({0}), {scalar(1)}),
                                  gen_make(make_word({1}), {scalar(1)})};
  const GramResult r = gram_matrix(us, half);
  Matrix expected(2, 2);
  expected << 1.0, 0.5, 0.5, 0.5;
  CHECK((r.gram - expected).norm() < 1e-15);
  CHECK(std::abs(r.min_eigenvalue - (3.0 - std::sqrt(5.0)) / 4.0) < 1e-12);
  CHECK(r.psd);
}

TEST_CASE("identity channel Gram is the ordinary Gram of products") {
  const Channel id = identity_channel(2);
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    std::vector<Generator> us;
    std::vector<Matrix> products;
    const std::size_t n = 1 + rng.below(6);
    for (std::size_t i = 0; i < n; ++i) {
      const Generator g = random_generator(rng, 2, 3, 3);
      us.push_back(g);
      products.push_back(testing::plain_product(g.tensors()));
    }
    const GramResult r = gram_matrix(us, id);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Matrix block = r.gram.block(static_cast<long>(2 * i), static_cast<long>(2 * j), 2, 2);
        CHECK((block - products[i].adjoint() * products[j]).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("height-lowering factorisation") {
  for (double lambda : {1.0, 0.5}) {
    const Channel phi = random_channel(2, 2, 8, lambda == 1.0, lambda);
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
      std::vector<Generator> us;
      const std::size_t n = 1 + rng.below(8);
      for (std::size_t i = 0; i < n; ++i) us.push_back(random_generator(rng, 2, 3, 3));
      us.push_back(gen_make(make_word({2}), {random_unit_matrix(rng, 2)}));
      const KeyLemmaResult k = key_lemma_step(us, phi);
      CHECK(k.residual < 1e-9);
      CHECK(k.vs.size() == us.size());
      for (const auto &v : k.vs) CHECK(gen_height(v) < k.max_height);
    }
  }
  const Channel id = identity_channel(2);
  const std::vector<Generator> flat{gen_scalar(Matrix::Identity(2, 2))};
  try {
    key_lemma_step(flat, id);
    FAIL("expected HeightZero");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::HeightZero);
  }
}
