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
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ncdyn {

/// One verified identity: the measured residual, the threshold it is held
/// to, and the seed it was drawn from.
struct CheckRecord {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  std::optional<double> skip_rate;
};

struct Report {
  std::vector<CheckRecord> records;

  bool all_pass() const;
  std::vector<std::string> failing() const;
};

/// Field order: name, params, residual, threshold, pass, seed, elapsed_ms,
/// then skip_rate when the check samples.
nlohmann::ordered_json record_to_json(const CheckRecord &record);
nlohmann::ordered_json report_to_json(const Report &report);

/// "PASS name residual=... threshold=..." style single line.
std::string summary_line(const CheckRecord &record);

}  // namespace ncdyn
