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
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "ncdyn/algebra.hpp"
#include "ncdyn/dilation.hpp"
#include "ncdyn/report.hpp"

namespace ncdyn {

struct RandomChannelSpec {
  std::size_t d = 2;
  std::size_t r = 2;
  std::uint64_t seed = 7;
  bool unital = true;
  double lambda = 1.0;
};

struct SuiteTolerances {
  double identity = 1e-10;   // moment and expectation identities
  double gram = 1e-8;        // relative PSD floor
  double lemma = 1e-9;       // height-lowering factorisation
  double dilation = 1e-8;    // two-path and standard-dilation residuals
};

/// Everything the property suite needs. Defaults: random unital d = 2
/// channel, N = L = 2, 50 trials per sampled check.
struct SuiteConfig {
  std::optional<std::filesystem::path> channel_file;
  RandomChannelSpec random;
  TruncationParams truncation;
  std::size_t trials = 50;
  std::size_t dilation_trials = 400;
  std::uint64_t seed = 1;
  SuiteTolerances tolerances;
  std::optional<std::filesystem::path> out;

  void validate() const;
};

/// Keys: channel {file | random {d, r, seed, unital, lambda}}, truncation
/// {N, L, eig_tol}, trials, dilation_trials, seed, tolerances {identity,
/// gram, lemma, dilation}, out. Relative paths resolve against base_dir.
/// Throws Error{Config} or Error{Parse}.
SuiteConfig suite_config_from_json(const nlohmann::json &j,
                                   const std::filesystem::path &base_dir = {});

Channel suite_channel(const SuiteConfig &config);

/// Seed for trial `trial` of the check registered at position `check`:
/// seed + 1000000 * check + trial.
std::uint64_t derive_seed(std::uint64_t seed, std::size_t check, std::size_t trial);

/// Runs every registered check in registration order.
Report run_suite(const SuiteConfig &config);

}  // namespace ncdyn
