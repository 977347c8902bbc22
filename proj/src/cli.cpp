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

#include "ncdyn/cli.hpp"

#include <chrono>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "ncdyn/dilation.hpp"
#include "ncdyn/error.hpp"
#include "ncdyn/expectation.hpp"
#include "ncdyn/io.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/report.hpp"
#include "ncdyn/suite.hpp"

namespace ncdyn {
namespace {

struct ChannelOptions {
  std::optional<std::string> file;
  std::size_t d = 2;
  std::size_t r = 2;
  std::uint64_t seed = 7;
  bool unital = false;
  double lambda = 1.0;
};

void add_channel_options(CLI::App *cmd, ChannelOptions &o) {
  cmd->add_option("--channel", o.file, "Channel file (Kraus operators)");
  cmd->add_option("--d", o.d, "Dimension of a random channel");
  cmd->add_option("--r", o.r, "Kraus count of a random channel");
  cmd->add_option("--seed", o.seed, "Seed of the random channel and trials");
  cmd->add_flag("--unital", o.unital, "Random channel is unital");
  cmd->add_option("--lambda", o.lambda, "Scale of a non-unital random channel");
}

Channel make_channel(const ChannelOptions &o) {
  if (o.file) return io::load_channel(*o.file);
  if (o.unital && o.lambda != 1.0) {
    throw Error(ErrorCode::Config, "--unital and --lambda other than 1 conflict");
  }
  return random_channel(o.d, o.r, o.seed, o.unital, o.lambda);
}

io::SymbolTable symbols_for(const std::optional<std::string> &path, std::size_t d) {
  if (!path) return {};
  io::SymbolTable table = io::load_symbols(*path);
  for (const auto &[name, m] : table) {
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      throw Error(ErrorCode::ShapeMismatch, "matrix '" + name + "' does not match the channel dimension");
    }
  }
  return table;
}

std::vector<Generator> generators_for(const std::vector<std::string> &literals,
                                      const io::SymbolTable &symbols, std::size_t d) {
  if (literals.empty()) throw Error(ErrorCode::Config, "at least one --gen is required");
  std::vector<Generator> out;
  for (const auto &text : literals) {
    out.push_back(io::resolve_generator(io::parse_generator_literal(text), symbols, d));
  }
  return out;
}

void emit(const Report &report, const std::optional<std::string> &out_path, std::ostream &out) {
  for (const auto &r : report.records) out << summary_line(r) << '\n';
  if (out_path) io::write_text_file(*out_path, report_to_json(report).dump(2) + "\n");
}

int report_exit(const Report &report, std::ostream &err) {
  if (report.all_pass()) return kExitOk;
  err << "failing checks:";
  for (const auto &name : report.failing()) err << ' ' << name;
  err << '\n';
  return kExitCheckFailed;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Moment polynomials, expectations and truncated dilations of CP contractions"};
  app.require_subcommand(1);

  // render
  std::string render_literal;
  auto *render = app.add_subcommand("render", "Print the normal form of a moment bracket");
  render->add_option("literal", render_literal, "[n1,...,nk; a1,...,ak]")->required();

  // eval
  ChannelOptions eval_channel;
  std::optional<std::string> eval_matrices;
  std::string eval_literal;
  auto *eval = app.add_subcommand("eval", "Evaluate a moment bracket numerically");
  add_channel_options(eval, eval_channel);
  eval->add_option("--matrices", eval_matrices, "Matrices file binding names");
  eval->add_option("literal", eval_literal, "[n1,...,nk; M1,...,Mk]")->required();

  // gram and factor share their inputs
  ChannelOptions family_channel;
  std::optional<std::string> family_matrices;
  std::vector<std::string> family_gens;
  double gram_tol = kDefaultPsdTol;
  std::optional<std::string> family_out;
  auto *gram = app.add_subcommand("gram", "Gram matrix of a generator family and its PSD check");
  auto *factor = app.add_subcommand("factor", "Height-lowering factorisation of a generator family");
  for (auto *cmd : {gram, factor}) {
    add_channel_options(cmd, family_channel);
    cmd->add_option("--matrices", family_matrices, "Matrices file binding names");
    cmd->add_option("--gen", family_gens, "Generator \"(n1,...,nk) ; [M1,...,Mk]\"")->required();
    cmd->add_option("--out", family_out, "Report file");
  }
  gram->add_option("--tol", gram_tol, "Relative PSD tolerance");

  // dilate
  ChannelOptions dilate_channel;
  TruncationParams dilate_params;
  std::size_t dilate_trials = 400;
  double dilate_tol = 1e-8;
  std::optional<std::string> dilate_out;
  auto *dilate = app.add_subcommand("dilate", "Truncated GNS dilation and its verifications");
  add_channel_options(dilate, dilate_channel);
  dilate->add_option("--N", dilate_params.max_height, "Maximum letter");
  dilate->add_option("--L", dilate_params.max_length, "Maximum word length");
  dilate->add_option("--eig-tol", dilate_params.eig_tol, "Relative eigenvalue cutoff");
  dilate->add_option("--trials", dilate_trials, "Sampled products for the moment formula");
  dilate->add_option("--tol", dilate_tol, "Residual threshold");
  dilate->add_option("--out", dilate_out, "Report file");

  // suite
  std::optional<std::string> suite_config_path;
  std::optional<std::string> suite_out;
  auto *suite = app.add_subcommand("suite", "Run every registered property check");
  suite->add_option("--config", suite_config_path, "Suite configuration file");
  suite->add_option("--out", suite_out, "Report file (overrides the config)");

  std::vector<std::string> argv_store{"ncdyn"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*render) {
      const auto lit = io::parse_moment_literal(render_literal);
      out << moment_render(moment_normal_form(lit.indices, lit.names), lit.names) << '\n';
      return kExitOk;
    }

    if (*eval) {
      const Channel phi = make_channel(eval_channel);
      const auto symbols = symbols_for(eval_matrices, phi.dim());
      const auto lit = io::parse_moment_literal(eval_literal);
      std::vector<Matrix> mats;
      for (const auto &name : lit.names) mats.push_back(io::resolve_symbol(name, symbols, phi.dim()));
      out << io::format_matrix(moment_eval(lit.indices, mats, phi)) << '\n';
      return kExitOk;
    }

    if (*gram) {
      const auto start = std::chrono::steady_clock::now();
      const Channel phi = make_channel(family_channel);
      const auto us = generators_for(family_gens, symbols_for(family_matrices, phi.dim()), phi.dim());
      const GramResult g = gram_matrix(us, phi, gram_tol);
      out << io::format_matrix(g.gram) << '\n';
      out << "min_eigenvalue=" << io::format_double(g.min_eigenvalue)
          << " norm=" << io::format_double(g.norm) << '\n';
      CheckRecord r;
      r.name = "gram.positivity";
      r.params = {{"d", static_cast<double>(phi.dim())}, {"n", static_cast<double>(us.size())}};
      r.residual = std::max(0.0, -g.min_eigenvalue / std::max(1.0, g.norm));
      r.threshold = gram_tol;
      r.pass = g.psd;
      r.seed = family_channel.seed;
      r.elapsed_ms = elapsed_ms(start);
      Report report;
      report.records.push_back(r);
      emit(report, family_out, out);
      return report_exit(report, err);
    }

    if (*factor) {
      const auto start = std::chrono::steady_clock::now();
      const Channel phi = make_channel(family_channel);
      const auto us = generators_for(family_gens, symbols_for(family_matrices, phi.dim()), phi.dim());
      const KeyLemmaResult k = key_lemma_step(us, phi);
      for (std::size_t i = 0; i < k.vs.size(); ++i) {
        out << "v" << i << "=" << k.vs[i].word() << " height=" << gen_height(k.vs[i]) << '\n';
      }
      bool lowered = true;
      for (const auto &v : k.vs) lowered = lowered && gen_height(v) < k.max_height;
      CheckRecord r;
      r.name = "factor.key_lemma";
      r.params = {{"d", static_cast<double>(phi.dim())},
                  {"n", static_cast<double>(us.size())},
                  {"height", static_cast<double>(k.max_height)}};
      r.residual = k.residual;
      r.threshold = 1e-9;
      r.pass = lowered && k.residual < r.threshold;
      r.seed = family_channel.seed;
      r.elapsed_ms = elapsed_ms(start);
      Report report;
      report.records.push_back(r);
      emit(report, family_out, out);
      return report_exit(report, err);
    }

    if (*dilate) {
      dilate_params.validate();
      const auto start = std::chrono::steady_clock::now();
      const Channel phi = make_channel(dilate_channel);
      const DilationModel model = build_gns(phi, dilate_params);
      const std::vector<std::pair<std::string, double>> params{
          {"d", static_cast<double>(phi.dim())},
          {"N", static_cast<double>(dilate_params.max_height)},
          {"L", static_cast<double>(dilate_params.max_length)},
          {"basis", static_cast<double>(model.basis_size())},
          {"rank", static_cast<double>(model.rank())}};
      out << "basis=" << model.basis_size() << " rank=" << model.rank()
          << " corner_min_eigenvalue=" << io::format_double(model.corner_min_eigenvalue()) << '\n';
      Report report;
      {
        CheckRecord r;
        r.name = "dilate.gram_psd";
        r.params = params;
        r.residual = std::max(0.0, -model.gram_min_eigenvalue() / std::max(1.0, model.gram_max_eigenvalue()));
        r.threshold = dilate_tol;
        r.pass = r.residual <= r.threshold;
        r.seed = dilate_channel.seed;
        r.elapsed_ms = elapsed_ms(start);
        report.records.push_back(r);
      }
      {
        const auto t0 = std::chrono::steady_clock::now();
        const auto m = verify_moment_formula(model, dilate_trials, dilate_channel.seed);
        CheckRecord r;
        r.name = "dilate.moment_formula";
        r.params = params;
        r.params.emplace_back("accepted", static_cast<double>(m.accepted));
        r.residual = m.max_residual;
        r.threshold = dilate_tol;
        r.pass = m.accepted > 0 && m.max_residual < dilate_tol;
        r.seed = dilate_channel.seed;
        r.elapsed_ms = elapsed_ms(t0);
        r.skip_rate = m.skip_rate;
        report.records.push_back(r);
      }
      if (phi.is_unital(phi.tol_cp())) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = verify_standard_properties(model);
        const double ms = elapsed_ms(t0);
        for (const auto &[name, value] : {std::pair{"dilate.alpha_e_corner", s.corner_identity_residual},
                                          std::pair{"dilate.hereditarity", s.hereditarity_residual}}) {
          CheckRecord r;
          r.name = name;
          r.params = params;
          r.residual = value;
          r.threshold = dilate_tol;
          r.pass = value < dilate_tol;
          r.seed = dilate_channel.seed;
          r.elapsed_ms = ms;
          report.records.push_back(r);
        }
      }
      emit(report, dilate_out, out);
      return report_exit(report, err);
    }

    if (*suite) {
      SuiteConfig config;
      if (suite_config_path) {
        const std::filesystem::path path(*suite_config_path);
        config = suite_config_from_json(io::read_json_file(path), path.parent_path());
      }
      if (suite_out) config.out = *suite_out;
      const Report report = run_suite(config);
      std::optional<std::string> out_path;
      if (config.out) out_path = config.out->string();
      emit(report, out_path, out);
      return report_exit(report, err);
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ncdyn
