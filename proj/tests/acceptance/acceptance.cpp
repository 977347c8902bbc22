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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ncdyn/dilation.hpp"
#include "ncdyn/expectation.hpp"
#include "ncdyn/io.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/rng.hpp"
#include "ncdyn/sampling.hpp"
#include "oracle.hpp"

using namespace ncdyn;
using testing::opnorm;
using testing::oracle_moment;

namespace {

struct Result {
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct Criterion {
  int id;
  const char *name;
  double time_limit_s;
  std::function<Result()> body;
};

std::vector<unsigned> raw(const IndexTuple &t) { return {t.entries().begin(), t.entries().end()}; }

std::vector<Matrix> unit_mats(Rng &rng, std::size_t k, std::size_t d) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_unit_matrix(rng, d));
  return out;
}

Result below(double residual, double threshold, std::string note = {}) {
  return {residual, threshold, residual < threshold, std::move(note)};
}

// Unmerged index/tensor lists of u^* v, so the oracle sees the raw tuple.
void adjoint_then(const Generator &u, const Generator &v, std::vector<unsigned> &n, std::vector<Matrix> &a) {
  n.clear();
  a.clear();
  for (std::size_t i = u.size(); i-- > 0;) {
    n.push_back(u.word()[i]);
    a.push_back(u.tensors()[i].adjoint());
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    n.push_back(v.word()[i]);
    a.push_back(v.tensors()[i]);
  }
}

Matrix oracle_gram(const std::vector<Generator> &us, const Channel &phi) {
  const auto d = static_cast<long>(phi.dim());
  const auto n = static_cast<long>(us.size());
  Matrix g(n * d, n * d);
  std::vector<unsigned> idx;
  std::vector<Matrix> mats;
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) {
      adjoint_then(us[static_cast<std::size_t>(r)], us[static_cast<std::size_t>(c)], idx, mats);
      g.block(r * d, c * d, d, d) = oracle_moment(phi.kraus(), idx, mats);
    }
  }
  return g;
}

std::vector<Generator> family(Rng &rng, std::size_t d) {
  const std::size_t n = 1 + rng.below(20);
  std::vector<Generator> us;
  for (std::size_t i = 0; i < n; ++i) us.push_back(random_generator(rng, d, 3, 3));
  return us;
}

Channel channel_for(int kind, std::uint64_t seed) {
  return kind == 0 ? random_channel(2, 2, seed, true, 1.0) : random_channel(2, 2, seed, false, 0.5);
}

Result golden() {
  const std::vector<std::string> names{"a", "b", "c", "d"};
  const auto r1 = moment_render(moment_normal_form(IndexTuple({2, 6, 3, 4}), names), names);
  const auto r2 = moment_render(moment_normal_form(IndexTuple({6, 4, 2, 3}), names), names);
  const bool ok = r1 == "phi^2(a*phi(phi^3(b)*c*phi(d)))" && r2 == "phi^2(phi^2(phi^2(a)*b)*c*phi(d))";
  return {ok ? 0.0 : 1.0, 0.0, ok, r1 + " | " + r2};
}

Result split_positions() {
  double worst = 0.0;
  std::size_t splits = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Channel phi = random_channel(2, 2, 100 + t % 10, t % 2 == 0, t % 2 == 0 ? 1.0 : 0.5);
    Rng rng(2000 + t);
    const IndexTuple n = random_tuple(rng, 4, 5);
    const auto mats = unit_mats(rng, n.size(), 2);
    const Matrix reference = oracle_moment(phi.kraus(), raw(n), mats);
    worst = std::max(worst, opnorm(moment_eval(n, mats, phi) - reference));
    const Index low = *std::min_element(n.entries().begin(), n.entries().end());
    std::vector<Index> lowered = n.entries();
    for (auto &x : lowered) x -= low;
    for (std::size_t p = 0; p < lowered.size(); ++p) {
      if (lowered[p] != 0) continue;
      ++splits;
      const Matrix v = phi.power_apply(low, moment_eval_split_at(IndexTuple(lowered), mats, phi, p));
      worst = std::max(worst, opnorm(v - reference));
    }
  }
  return below(worst, 1e-10, std::to_string(splits) + " splits");
}

Result symmetry() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Channel phi = random_channel(2, 2, 300 + t % 10, t % 2 == 0, t % 2 == 0 ? 1.0 : 0.5);
    Rng rng(3000 + t);
    const IndexTuple n = random_tuple(rng, 4, 5);
    const auto mats = unit_mats(rng, n.size(), 2);
    worst = std::max(worst, moment_symmetry_residual(n, mats, phi));
    // The same identity through the oracle.
    const std::vector<unsigned> fwd = raw(n);
    const std::vector<unsigned> rev(fwd.rbegin(), fwd.rend());
    std::vector<Matrix> radj;
    for (std::size_t i = mats.size(); i-- > 0;) radj.push_back(mats[i].adjoint());
    worst = std::max(worst, opnorm(oracle_moment(phi.kraus(), fwd, mats).adjoint() -
                                   oracle_moment(phi.kraus(), rev, radj)));
  }
  return below(worst, 1e-10);
}

Result equivariance_module() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Channel phi = random_channel(2, 2, 400 + t % 10, t % 2 == 0, t % 2 == 0 ? 1.0 : 0.5);
    Rng rng(4000 + t);
    const Generator g = random_generator(rng, 2, 3, 4);
    const Matrix a = random_unit_matrix(rng, 2);
    const Matrix eg = expectation_E0(g, phi);
    worst = std::max(worst, opnorm(expectation_E0(gen_shift(g, 1), phi) - testing::kraus_apply(phi.kraus(), eg)));
    worst = std::max(worst, opnorm(expectation_E0(gen_product(gen_scalar(a), g), phi) - a * eg));
  }
  return below(worst, 1e-10);
}

Result hereditary() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Channel phi = random_channel(2, 2, 500 + t % 10, t % 2 == 0, t % 2 == 0 ? 1.0 : 0.5);
    Rng rng(5000 + t);
    const Generator g = random_bracketed_generator(rng, 2, 3, 4);
    const Generator h = random_bracketed_generator(rng, 2, 3, 4);
    worst = std::max(worst, opnorm(expectation_E0(gen_product(g, h), phi) -
                                   expectation_E0(g, phi) * expectation_E0(h, phi)));
  }
  return below(worst, 1e-10);
}

Result gram_positivity() {
  double worst = 0.0;
  double assembly = 0.0;
  for (int kind = 0; kind < 2; ++kind) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Channel phi = channel_for(kind, 600 + t);
      Rng rng(6000 + 100 * static_cast<std::uint64_t>(kind) + t);
      const auto us = family(rng, 2);
      const GramResult g = gram_matrix(us, phi);
      const Matrix reference = oracle_gram(us, phi);
      assembly = std::max(assembly, opnorm(g.gram - reference));
      const double norm = opnorm(reference);
      worst = std::max(worst, -testing::smallest_eigenvalue(reference) / std::max(1.0, norm));
      worst = std::max(worst, -g.min_eigenvalue / std::max(1.0, g.norm));
    }
  }
  Result r = below(std::max(worst, 0.0), 1e-8, "assembly residual " + io::format_double(assembly));
  r.pass = r.residual <= 1e-8 && assembly < 1e-10;
  return r;
}

Result key_lemma() {
  double worst = 0.0;
  bool lowered = true;
  for (int kind = 0; kind < 2; ++kind) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Channel phi = channel_for(kind, 600 + t);
      Rng rng(6000 + 100 * static_cast<std::uint64_t>(kind) + t);
      auto us = family(rng, 2);
      if (std::all_of(us.begin(), us.end(), [](const Generator &g) { return gen_height(g) == 0; })) {
        us.front() = gen_shift(us.front(), 1);
      }
      const KeyLemmaResult k = key_lemma_step(us, phi);
      worst = std::max(worst, k.residual);
      // Recompute the identity from the returned factors with the oracle.
      const Matrix defect = Matrix::Identity(2, 2) - phi.unit_image();
      std::vector<unsigned> idx;
      std::vector<Matrix> mats;
      for (std::size_t i = 0; i < us.size(); ++i) {
        lowered = lowered && gen_height(k.vs[i]) < k.max_height;
        for (std::size_t j = 0; j < us.size(); ++j) {
          adjoint_then(us[j], us[i], idx, mats);
          const Matrix lhs = oracle_moment(phi.kraus(), idx, mats);
          adjoint_then(k.vs[j], k.vs[i], idx, mats);
          const Matrix inner = testing::kraus_apply(phi.kraus(), oracle_moment(phi.kraus(), idx, mats));
          const Matrix rhs = k.bs[j].adjoint() * inner * k.bs[i] + k.cs[j].adjoint() * defect * k.cs[i];
          worst = std::max(worst, opnorm(lhs - rhs));
        }
      }
    }
  }
  Result r = below(worst, 1e-9, lowered ? "heights lowered" : "a height was not lowered");
  r.pass = r.pass && lowered;
  return r;
}

TruncationParams desk() {
  TruncationParams p;
  p.max_height = 2;
  p.max_length = 2;
  return p;
}

Result two_path() {
  double worst = 0.0;
  std::size_t accepted = 0, library_accepted = 0;
  double library = 0.0;
  const Word zero = make_word({0});
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Channel phi = random_channel(2, 2, 700 + s, true, 1.0);
    const DilationModel m = build_gns(phi, desk());
    const auto report = verify_moment_formula(m, 400, 7000 + 1000 * s);
    library = std::max(library, report.max_residual);
    library_accepted += report.accepted;
    Rng rng(8000 + s);
    for (int t = 0; t < 200; ++t) {
      const std::size_t k = 1 + rng.below(4);
      std::vector<unsigned> idx;
      std::vector<Matrix> mats;
      Generator g = gen_scalar(Matrix::Identity(2, 2));
      for (std::size_t i = 0; i < k; ++i) {
        idx.push_back(static_cast<unsigned>(rng.below(3)));
        mats.push_back(random_unit_matrix(rng, 2));
        const Generator factor = gen_make(IndexTuple({idx.back()}), {mats.back()});
        g = i == 0 ? factor : gen_product(g, factor);
      }
      if (!m.in_truncation(word_product(g.word(), zero))) continue;
      ++accepted;
      const Matrix value = compress_to_A(m, represent_on(m, g, m.corner_basis()).matrix).value;
      worst = std::max(worst, opnorm(value - oracle_moment(phi.kraus(), idx, mats)));
    }
  }
  Result r = below(std::max(worst, library), 1e-8,
                   std::to_string(accepted) + " oracle products, " + std::to_string(library_accepted) +
                       " library products");
  r.pass = r.pass && accepted >= 100 && library_accepted >= 100;
  return r;
}

Result standard_properties() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DilationModel m = build_gns(random_channel(2, 2, 900 + s, true, 1.0), desk());
    const auto r = verify_standard_properties(m);
    worst = std::max({worst, r.corner_identity_residual, r.hereditarity_residual});
  }
  return below(worst, 1e-8, "20 unital seeds");
}

Result spot_values() {
  const Channel half = scalar_channel(1, 0.5);
  const Matrix one = Matrix::Identity(1, 1);
  const std::vector<Generator> us{gen_make(make_word({0}), {one}), gen_make(make_word({1}), {one})};
  const GramResult g = gram_matrix(us, half);
  Matrix expected(2, 2);
  expected << 1.0, 0.5, 0.5, 0.5;
  const double gram_err = std::max(opnorm(g.gram - expected),
                                   std::abs(g.min_eigenvalue - (3.0 - std::sqrt(5.0)) / 4.0));
  const std::vector<Matrix> ones(3, one);
  const double moment_err = std::abs(moment_eval(IndexTuple({1, 0, 1}), ones, half)(0, 0) - 0.25);
  Result r;
  r.residual = std::max(gram_err, moment_err);
  r.threshold = 1e-12;
  r.pass = gram_err < 1e-12 && moment_err < 1e-15;
  r.note = "gram " + io::format_double(gram_err) + ", moment " + io::format_double(moment_err);
  return r;
}

Result identity_channel_products() {
  const Channel id = identity_channel(2);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(11000 + t);
    const IndexTuple n = random_tuple(rng, 4, 5);
    const auto mats = unit_mats(rng, n.size(), 2);
    worst = std::max(worst, opnorm(moment_eval(n, mats, id) - testing::plain_product(mats)));
  }
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng(12000 + t);
    const auto us = family(rng, 2);
    const GramResult g = gram_matrix(us, id);
    for (std::size_t r = 0; r < us.size(); ++r) {
      const Matrix pr = testing::plain_product(us[r].tensors());
      for (std::size_t c = 0; c < us.size(); ++c) {
        const Matrix pc = testing::plain_product(us[c].tensors());
        const Matrix block = g.gram.block(static_cast<long>(2 * r), static_cast<long>(2 * c), 2, 2);
        worst = std::max(worst, opnorm(block - pr.adjoint() * pc));
      }
    }
  }
  return below(worst, 1e-12);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "normal-form golden renders", 1.0, golden},
      {2, "split-position independence", 10.0, split_positions},
      {3, "symmetry", 10.0, symmetry},
      {4, "equivariance and module property", 10.0, equivariance_module},
      {5, "hereditary multiplicativity", 10.0, hereditary},
      {6, "Gram positivity", 120.0, gram_positivity},
      {7, "height-lowering factorisation", 60.0, key_lemma},
      {8, "two-path dilation oracle", 120.0, two_path},
      {9, "standard-dilation properties", 60.0, standard_properties},
      {10, "closed-form spot values", 10.0, spot_values},
      {11, "identity-channel degeneration", 10.0, identity_channel_products},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.body();
    } catch (const std::exception &e) {
      r = {std::nan(""), 0.0, false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = r.pass && secs < c.time_limit_s;
    if (!pass) ++failures;
    std::printf("%s criterion %2d %-34s residual=%-12.3e threshold=%-8.1e time=%.3fs/%gs%s%s\n",
                pass ? "PASS" : "FAIL", c.id, c.name, r.residual, r.threshold, secs, c.time_limit_s,
                r.note.empty() ? "" : "  ", r.note.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
