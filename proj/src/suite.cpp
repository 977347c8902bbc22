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

#include "ncdyn/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "ncdyn/error.hpp"
#include "ncdyn/expectation.hpp"
#include "ncdyn/io.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/rng.hpp"
#include "ncdyn/sampling.hpp"
#include "ncdyn/words.hpp"

namespace ncdyn {

void SuiteConfig::validate() const {
  truncation.validate();
  if (trials < 1) throw Error(ErrorCode::Config, "trials must be >= 1");
  if (dilation_trials < 1) throw Error(ErrorCode::Config, "dilation_trials must be >= 1");
  for (double tol : {tolerances.identity, tolerances.gram, tolerances.lemma, tolerances.dilation}) {
    if (!(tol > 0.0)) throw Error(ErrorCode::Config, "tolerances must be positive");
  }
  if (!channel_file) {
    if (random.d < 1 || random.r < 1) throw Error(ErrorCode::Config, "random channel needs d, r >= 1");
    if (!(random.lambda > 0.0)) throw Error(ErrorCode::Config, "lambda must be positive");
  }
}

namespace {

template <typename T>
T get_or(const nlohmann::json &j, const char *key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::Config, std::string("bad value for '") + key + "': " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

}  // namespace

SuiteConfig suite_config_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "config must be an object");
  SuiteConfig c;
  if (j.contains("channel")) {
    const auto &ch = j["channel"];
    if (ch.contains("file")) {
      c.channel_file = resolve(base_dir, get_or<std::string>(ch, "file", ""));
    } else if (ch.contains("random")) {
      const auto &r = ch["random"];
      c.random.d = get_or<std::size_t>(r, "d", c.random.d);
      c.random.r = get_or<std::size_t>(r, "r", c.random.r);
      c.random.seed = get_or<std::uint64_t>(r, "seed", c.random.seed);
      c.random.unital = get_or<bool>(r, "unital", c.random.unital);
      c.random.lambda = get_or<double>(r, "lambda", c.random.lambda);
    } else {
      throw Error(ErrorCode::Config, "channel needs 'file' or 'random'");
    }
  }
  if (j.contains("truncation")) {
    const auto &t = j["truncation"];
    c.truncation.max_height = get_or<Index>(t, "N", c.truncation.max_height);
    c.truncation.max_length = get_or<std::size_t>(t, "L", c.truncation.max_length);
    c.truncation.eig_tol = get_or<double>(t, "eig_tol", c.truncation.eig_tol);
    c.truncation.max_basis = get_or<std::size_t>(t, "max_basis", c.truncation.max_basis);
  }
  c.trials = get_or<std::size_t>(j, "trials", c.trials);
  c.dilation_trials = get_or<std::size_t>(j, "dilation_trials", c.dilation_trials);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("tolerances")) {
    const auto &t = j["tolerances"];
    c.tolerances.identity = get_or<double>(t, "identity", c.tolerances.identity);
    c.tolerances.gram = get_or<double>(t, "gram", c.tolerances.gram);
    c.tolerances.lemma = get_or<double>(t, "lemma", c.tolerances.lemma);
    c.tolerances.dilation = get_or<double>(t, "dilation", c.tolerances.dilation);
  }
  if (j.contains("out")) c.out = resolve(base_dir, get_or<std::string>(j, "out", ""));
  c.validate();
  return c;
}

Channel suite_channel(const SuiteConfig &config) {
  if (config.channel_file) return io::load_channel(*config.channel_file);
  const auto &r = config.random;
  return random_channel(r.d, r.r, r.seed, r.unital, r.lambda);
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t check, std::size_t trial) {
  return seed + 1000000ULL * check + trial;
}

namespace {

struct Context {
  const SuiteConfig &config;
  Channel phi;
  std::optional<DilationModel> model;

  const DilationModel &dilation() {
    if (!model) model = build_gns(phi, config.truncation);
    return *model;
  }
  std::size_t d() const { return phi.dim(); }
  std::uint64_t seed(std::size_t check, std::size_t trial) const {
    return derive_seed(config.seed, check, trial);
  }
};

// Result of a check body; the runner fills in name, seed and timing.
struct Outcome {
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> params;
  std::optional<double> skip_rate;
};

Outcome at_most(double residual, double threshold,
                std::vector<std::pair<std::string, double>> params = {}) {
  Outcome o;
  o.residual = residual;
  o.threshold = threshold;
  o.pass = residual <= threshold;
  o.params = std::move(params);
  return o;
}

const std::vector<Word> &small_words() {
  static const std::vector<Word> words = [] {
    std::vector<Word> out;
    std::vector<std::vector<Index>> frontier{{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<std::vector<Index>> next;
      for (const auto &p : frontier) {
        for (Index x = 0; x <= 3; ++x) {
          if (!p.empty() && p.back() == x) continue;
          auto q = p;
          q.push_back(x);
          out.push_back(make_word(q));
          next.push_back(std::move(q));
        }
      }
      frontier = std::move(next);
    }
    return out;
  }();
  return words;
}

Outcome words_associativity(Context &, std::size_t) {
  double violations = 0;
  const auto &ws = small_words();
  for (const auto &m : ws) {
    for (const auto &n : ws) {
      const Word mn = word_product(m, n);
      for (const auto &p : ws) {
        if (word_product(mn, p) != word_product(m, word_product(n, p))) ++violations;
      }
    }
  }
  return at_most(violations, 0.0, {{"max_length", 3}, {"max_letter", 3}});
}

Outcome words_involution(Context &, std::size_t) {
  double violations = 0;
  const auto &ws = small_words();
  for (const auto &m : ws) {
    if (word_involution(word_involution(m)) != m) ++violations;
    for (const auto &n : ws) {
      if (word_involution(word_product(m, n)) !=
          word_product(word_involution(n), word_involution(m))) {
        ++violations;
      }
    }
  }
  return at_most(violations, 0.0, {{"max_length", 3}, {"max_letter", 3}});
}

Outcome words_shift(Context &, std::size_t) {
  double violations = 0;
  const auto &ws = small_words();
  for (Index t = 0; t <= 3; ++t) {
    for (const auto &m : ws) {
      if (word_shift(word_involution(m), t) != word_involution(word_shift(m, t))) ++violations;
      if (word_height(word_shift(m, t)) != word_height(m) + t) ++violations;
      for (const auto &n : ws) {
        const Word mn = word_product(m, n);
        if (word_shift(mn, t) != word_product(word_shift(m, t), word_shift(n, t))) ++violations;
        if (word_height(mn) > std::max(word_height(m), word_height(n))) ++violations;
      }
    }
  }
  return at_most(violations, 0.0, {{"max_shift", 3}});
}

Outcome algebra_adjoint(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Matrix a = random_gaussian_matrix(rng, ctx.d(), ctx.d());
    worst = std::max(worst, operator_norm(ctx.phi.apply(a.adjoint()) - ctx.phi.apply(a).adjoint()) /
                                operator_norm(a));
  }
  return at_most(worst, 1e-12);
}

Outcome algebra_positivity(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Matrix a = random_psd_matrix(rng, ctx.d());
    worst = std::max(worst, -hermitian_eigenvalues(ctx.phi.apply(a))(0));
  }
  return at_most(std::max(worst, 0.0), 1e-10);
}

Outcome algebra_complete_positivity(Context &ctx, std::size_t check) {
  double worst = 0.0;
  const auto d = static_cast<Eigen::Index>(ctx.d());
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const auto blocks = static_cast<Eigen::Index>(1 + t % 3);
    const Matrix p = random_psd_matrix(rng, static_cast<std::size_t>(blocks * d));
    Matrix out(blocks * d, blocks * d);
    for (Eigen::Index i = 0; i < blocks; ++i) {
      for (Eigen::Index j = 0; j < blocks; ++j) {
        out.block(i * d, j * d, d, d) = ctx.phi.apply(p.block(i * d, j * d, d, d));
      }
    }
    worst = std::max(worst, -hermitian_eigenvalues(out)(0));
  }
  return at_most(std::max(worst, 0.0), 1e-10, {{"max_blocks", 3}});
}

Outcome algebra_contractivity(Context &ctx, std::size_t) {
  return at_most(std::max(0.0, operator_norm(ctx.phi.unit_image()) - 1.0), ctx.phi.tol_cp());
}

Outcome moments_golden(Context &, std::size_t) {
  const std::vector<std::string> names{"a", "b", "c", "d"};
  double mismatches = 0;
  if (moment_render(moment_normal_form(IndexTuple({2, 6, 3, 4}), names), names) !=
      "phi^2(a*phi(phi^3(b)*c*phi(d)))") {
    ++mismatches;
  }
  if (moment_render(moment_normal_form(IndexTuple({6, 4, 2, 3}), names), names) !=
      "phi^2(phi^2(phi^2(a)*b)*c*phi(d))") {
    ++mismatches;
  }
  return at_most(mismatches, 0.0);
}

std::vector<Matrix> unit_matrices(Rng &rng, std::size_t count, std::size_t d) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit_matrix(rng, d));
  return out;
}

Outcome moments_mp1(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const IndexTuple n = random_tuple(rng, 4, 5);
    const auto mats = unit_matrices(rng, n.size(), ctx.d());
    std::vector<Index> raised = n.entries();
    for (auto &x : raised) ++x;
    worst = std::max(worst, operator_norm(moment_eval(IndexTuple(raised), mats, ctx.phi) -
                                          ctx.phi.apply(moment_eval(n, mats, ctx.phi))));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome moments_split(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const IndexTuple n = random_tuple(rng, 4, 5);
    const auto mats = unit_matrices(rng, n.size(), ctx.d());
    const Index low = *std::min_element(n.entries().begin(), n.entries().end());
    std::vector<Index> lowered = n.entries();
    for (auto &x : lowered) x -= low;
    const IndexTuple reduced(lowered);
    const Matrix reference = moment_eval(n, mats, ctx.phi);
    for (std::size_t p = 0; p < lowered.size(); ++p) {
      if (lowered[p] != 0) continue;
      const Matrix split = ctx.phi.power_apply(low, moment_eval_split_at(reduced, mats, ctx.phi, p));
      worst = std::max(worst, operator_norm(split - reference));
    }
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome moments_multilinearity(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const IndexTuple n = random_tuple(rng, 4, 5);
    auto mats = unit_matrices(rng, n.size(), ctx.d());
    const std::size_t slot = rng.below(n.size());
    const Matrix other = random_unit_matrix(rng, ctx.d());
    const Complex x = rng.complex_normal(), y = rng.complex_normal();
    const Matrix first = moment_eval(n, mats, ctx.phi);
    const Matrix original = mats[slot];
    mats[slot] = other;
    const Matrix second = moment_eval(n, mats, ctx.phi);
    mats[slot] = x * original + y * other;
    const Matrix combined = moment_eval(n, mats, ctx.phi);
    worst = std::max(worst, operator_norm(combined - x * first - y * second));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome moments_symmetry(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const IndexTuple n = random_tuple(rng, 4, 5);
    const auto mats = unit_matrices(rng, n.size(), ctx.d());
    worst = std::max(worst, moment_symmetry_residual(n, mats, ctx.phi));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome expectation_equivariance(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_generator(rng, ctx.d(), 3, 4);
    worst = std::max(worst, operator_norm(expectation_E0(gen_shift(g, 1), ctx.phi) -
                                          ctx.phi.apply(expectation_E0(g, ctx.phi))));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome expectation_module(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_generator(rng, ctx.d(), 3, 4);
    const Matrix a = random_unit_matrix(rng, ctx.d());
    const Matrix eg = expectation_E0(g, ctx.phi);
    worst = std::max(worst, operator_norm(expectation_E0(gen_product(gen_scalar(a), g), ctx.phi) - a * eg));
    worst = std::max(worst, operator_norm(expectation_E0(gen_product(g, gen_scalar(a)), ctx.phi) - eg * a));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome expectation_hereditary(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_bracketed_generator(rng, ctx.d(), 3, 4);
    const Generator h = random_bracketed_generator(rng, ctx.d(), 3, 4);
    worst = std::max(worst, operator_norm(expectation_E0(gen_product(g, h), ctx.phi) -
                                          expectation_E0(g, ctx.phi) * expectation_E0(h, ctx.phi)));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome expectation_adjoint(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_generator(rng, ctx.d(), 3, 4);
    worst = std::max(worst, operator_norm(expectation_E0(gen_involution(g), ctx.phi) -
                                          expectation_E0(g, ctx.phi).adjoint()));
  }
  return at_most(worst, ctx.config.tolerances.identity);
}

Outcome expectation_semigroup(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_generator(rng, ctx.d(), 3, 3);
    const Generator h = random_generator(rng, ctx.d(), 3, 3);
    const Generator k = random_generator(rng, ctx.d(), 3, 3);
    worst = std::max(worst, gen_distance(gen_product(gen_product(g, h), k),
                                         gen_product(g, gen_product(h, k))));
    worst = std::max(worst, gen_distance(gen_involution(gen_product(g, h)),
                                         gen_product(gen_involution(h), gen_involution(g))));
    worst = std::max(worst, gen_distance(gen_shift(gen_product(g, h), 1),
                                         gen_product(gen_shift(g, 1), gen_shift(h, 1))));
  }
  return at_most(worst, 1e-12);
}

std::vector<Generator> random_family(Rng &rng, std::size_t d) {
  const std::size_t n = 1 + rng.below(20);
  std::vector<Generator> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_generator(rng, d, 3, 3));
  return out;
}

Outcome expectation_gram(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const auto family = random_family(rng, ctx.d());
    const GramResult g = gram_matrix(family, ctx.phi, ctx.config.tolerances.gram);
    worst = std::max(worst, -g.min_eigenvalue / std::max(1.0, g.norm));
  }
  return at_most(std::max(worst, 0.0), ctx.config.tolerances.gram, {{"max_family", 20}});
}

Outcome expectation_key_lemma(Context &ctx, std::size_t check) {
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    auto family = random_family(rng, ctx.d());
    if (std::all_of(family.begin(), family.end(), [](const Generator &g) { return gen_height(g) == 0; })) {
      family.front() = gen_shift(family.front(), 1);
    }
    const KeyLemmaResult r = key_lemma_step(family, ctx.phi);
    worst = std::max(worst, r.residual);
    for (const auto &v : r.vs) {
      if (gen_height(v) >= r.max_height) worst = std::numeric_limits<double>::infinity();
    }
  }
  return at_most(worst, ctx.config.tolerances.lemma, {{"max_family", 20}});
}

Outcome dilation_gram(Context &ctx, std::size_t) {
  const auto &m = ctx.dilation();
  const double scale = std::max(1.0, m.gram_max_eigenvalue());
  return at_most(std::max(0.0, -m.gram_min_eigenvalue() / scale), ctx.config.tolerances.gram,
                 {{"basis", static_cast<double>(m.basis_size())}, {"rank", static_cast<double>(m.rank())}});
}

Outcome dilation_corner(Context &ctx, std::size_t) {
  const auto &m = ctx.dilation();
  Outcome o;
  o.residual = m.corner_min_eigenvalue();
  o.threshold = kCornerTol;
  o.pass = o.residual > o.threshold && m.corner_isometry_residual() < ctx.config.tolerances.dilation;
  return o;
}

Outcome dilation_projection(Context &ctx, std::size_t) {
  const Matrix &p = ctx.dilation().corner_projection();
  const double residual = std::max(operator_norm(p - p.adjoint()), operator_norm(p * p - p));
  return at_most(residual, 1e-10);
}

Outcome dilation_moment_formula(Context &ctx, std::size_t check) {
  const auto r = verify_moment_formula(ctx.dilation(), ctx.config.dilation_trials, ctx.seed(check, 0));
  Outcome o = at_most(r.max_residual, ctx.config.tolerances.dilation,
                      {{"accepted", static_cast<double>(r.accepted)}});
  o.pass = o.pass && r.accepted > 0;
  o.skip_rate = r.skip_rate;
  return o;
}

Outcome dilation_alpha_e(Context &ctx, std::size_t) {
  const auto r = verify_standard_properties(ctx.dilation());
  return at_most(r.corner_identity_residual, ctx.config.tolerances.dilation);
}

Outcome dilation_hereditarity(Context &ctx, std::size_t) {
  const auto r = verify_standard_properties(ctx.dilation());
  return at_most(r.hereditarity_residual, ctx.config.tolerances.dilation,
                 {{"generators", static_cast<double>(r.generators_checked)}});
}

Generator random_letter(Rng &rng, std::size_t d, Index max_letter) {
  return gen_make(IndexTuple({static_cast<Index>(rng.below(max_letter + 1))}),
                  {random_unit_matrix(rng, d)});
}

Outcome dilation_products(Context &ctx, std::size_t check) {
  const auto &m = ctx.dilation();
  const std::size_t d = m.dim();
  double worst = 0.0;
  std::size_t used = 0;
  const std::size_t trials = std::min<std::size_t>(ctx.config.trials, 20);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_letter(rng, d, m.params().max_height);
    const Generator h = random_letter(rng, d, m.params().max_height);
    const Generator gh = gen_product(g, h);
    std::vector<std::size_t> domain;
    for (std::size_t c = 0; c < m.catalog().size(); ++c) {
      const Word hu = word_product(h.word(), m.catalog()[c].word());
      if (m.in_truncation(hu) && m.in_truncation(word_product(g.word(), hu))) {
        for (std::size_t s = 0; s < d; ++s) domain.push_back(c * d + s);
      }
    }
    if (domain.empty()) continue;
    ++used;
    const auto pg = represent_on(m, g, admissible_domain(m, g));
    const auto ph = represent_on(m, h, domain);
    const auto pgh = represent_on(m, gh, domain);
    for (auto alpha : domain) {
      const Eigen::VectorXcd x = m.coords().col(static_cast<Eigen::Index>(alpha));
      worst = std::max(worst, (pg.matrix * (ph.matrix * x) - pgh.matrix * x).norm());
    }
  }
  Outcome o = at_most(worst, ctx.config.tolerances.dilation, {{"pairs", static_cast<double>(used)}});
  o.skip_rate = 1.0 - static_cast<double>(used) / static_cast<double>(trials);
  return o;
}

Outcome dilation_adjoint(Context &ctx, std::size_t check) {
  const auto &m = ctx.dilation();
  double worst = 0.0;
  const std::size_t trials = std::min<std::size_t>(ctx.config.trials, 20);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const Generator g = random_letter(rng, m.dim(), m.params().max_height);
    const Generator gs = gen_involution(g);
    const auto pg = represent_on(m, g, admissible_domain(m, g));
    const auto pgs = represent_on(m, gs, admissible_domain(m, gs));
    for (auto a : pg.domain) {
      const Eigen::VectorXcd xa = m.coords().col(static_cast<Eigen::Index>(a));
      const Eigen::VectorXcd ga = pg.matrix * xa;
      for (auto b : pgs.domain) {
        const Eigen::VectorXcd xb = m.coords().col(static_cast<Eigen::Index>(b));
        worst = std::max(worst, std::abs(xb.dot(ga) - (pgs.matrix * xb).dot(xa)));
      }
    }
  }
  return at_most(worst, ctx.config.tolerances.dilation);
}

Outcome dilation_consistency(Context &ctx, std::size_t check) {
  const auto &small = ctx.dilation();
  TruncationParams bigger = small.params();
  bigger.max_height += 1;
  const DilationModel large = build_gns(ctx.phi, bigger);
  const std::size_t d = small.dim();
  const Word zero = make_word({0});
  double worst = 0.0;
  for (std::size_t t = 0; t < ctx.config.trials; ++t) {
    Rng rng(ctx.seed(check, t));
    const IndexTuple n = random_tuple(rng, small.params().max_height, small.params().max_length + 1);
    const auto mats = unit_matrices(rng, n.size(), d);
    const Generator g = gen_make(n, mats);
    if (!small.in_truncation(word_product(g.word(), zero))) continue;
    const Matrix a = compress_to_A(small, represent_on(small, g, small.corner_basis()).matrix).value;
    const Matrix b = compress_to_A(large, represent_on(large, g, large.corner_basis()).matrix).value;
    worst = std::max(worst, operator_norm(a - b));
  }
  return at_most(worst, ctx.config.tolerances.dilation, {{"N_enlarged", static_cast<double>(bigger.max_height)}});
}

struct Registered {
  const char *name;
  std::function<Outcome(Context &, std::size_t)> body;
  bool needs_unital = false;
};

const std::vector<Registered> &registry() {
  static const std::vector<Registered> checks{
      {"words.associativity", words_associativity},
      {"words.involution", words_involution},
      {"words.shift_endomorphism", words_shift},
      {"algebra.adjoint_preservation", algebra_adjoint},
      {"algebra.positivity", algebra_positivity},
      {"algebra.complete_positivity", algebra_complete_positivity},
      {"algebra.contractivity", algebra_contractivity},
      {"moments.normal_form_golden", moments_golden},
      {"moments.mp1_consistency", moments_mp1},
      {"moments.split_independence", moments_split},
      {"moments.multilinearity", moments_multilinearity},
      {"moments.symmetry", moments_symmetry},
      {"expectation.equivariance", expectation_equivariance},
      {"expectation.module_property", expectation_module},
      {"expectation.hereditary_multiplicativity", expectation_hereditary},
      {"expectation.adjoint_compatibility", expectation_adjoint},
      {"expectation.semigroup_laws", expectation_semigroup},
      {"expectation.gram_positivity", expectation_gram},
      {"expectation.key_lemma", expectation_key_lemma},
      {"dilation.gram_psd", dilation_gram},
      {"dilation.corner_nondegeneracy", dilation_corner},
      {"dilation.corner_projection", dilation_projection},
      {"dilation.moment_formula", dilation_moment_formula},
      {"dilation.alpha_e_corner", dilation_alpha_e, true},
      {"dilation.hereditarity", dilation_hereditarity, true},
      {"dilation.product_representation", dilation_products},
      {"dilation.adjoint_compatibility", dilation_adjoint},
      {"dilation.truncation_consistency", dilation_consistency},
  };
  return checks;
}

}  // namespace

Report run_suite(const SuiteConfig &config) {
  config.validate();
  Context ctx{config, suite_channel(config), std::nullopt};
  // The consistency check also builds the model one letter higher.
  TruncationParams enlarged = config.truncation;
  enlarged.max_height += 1;
  if (const std::size_t basis = catalog_size(ctx.d(), enlarged) * ctx.d(); basis > enlarged.max_basis) {
    throw Error(ErrorCode::Config, "truncation too large for the suite: the enlarged model has " +
                                       std::to_string(basis) + " basis vectors, max_basis is " +
                                       std::to_string(enlarged.max_basis));
  }
  const bool unital = ctx.phi.is_unital(ctx.phi.tol_cp());
  Report report;
  const auto &checks = registry();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (checks[i].needs_unital && !unital) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o = checks[i].body(ctx, i);
    const auto stop = std::chrono::steady_clock::now();
    CheckRecord r;
    r.name = checks[i].name;
    r.params = {{"d", static_cast<double>(ctx.d())},
                {"N", static_cast<double>(config.truncation.max_height)},
                {"L", static_cast<double>(config.truncation.max_length)},
                {"trials", static_cast<double>(config.trials)}};
    r.params.insert(r.params.end(), o.params.begin(), o.params.end());
    r.residual = o.residual;
    r.threshold = o.threshold;
    r.pass = o.pass;
    r.seed = ctx.seed(i, 0);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    r.skip_rate = o.skip_rate;
    report.records.push_back(std::move(r));
  }
  return report;
}

}  // namespace ncdyn
