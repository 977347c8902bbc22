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

#include "ncdyn/report.hpp"

#include <cmath>

#include "ncdyn/io.hpp"

namespace ncdyn {

bool Report::all_pass() const {
  for (const auto &r : records) {
    if (!r.pass) return false;
  }
  return true;
}

std::vector<std::string> Report::failing() const {
  std::vector<std::string> out;
  for (const auto &r : records) {
    if (!r.pass) out.push_back(r.name);
  }
  return out;
}

namespace {

nlohmann::ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

nlohmann::ordered_json record_to_json(const CheckRecord &record) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto &[key, value] : record.params) params[key] = number(value);
  nlohmann::ordered_json out;
  out["name"] = record.name;
  out["params"] = std::move(params);
  out["residual"] = number(record.residual);
  out["threshold"] = number(record.threshold);
  out["pass"] = record.pass;
  out["seed"] = record.seed;
  out["elapsed_ms"] = record.elapsed_ms;
  if (record.skip_rate) out["skip_rate"] = *record.skip_rate;
  return out;
}

nlohmann::ordered_json report_to_json(const Report &report) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto &r : report.records) records.push_back(record_to_json(r));
  nlohmann::ordered_json out;
  out["pass"] = report.all_pass();
  out["records"] = std::move(records);
  return out;
}

std::string summary_line(const CheckRecord &record) {
  std::string out = record.pass ? "PASS " : "FAIL ";
  out += record.name + " residual=" + io::format_double(record.residual) +
         " threshold=" + io::format_double(record.threshold);
  if (record.skip_rate) out += " skip_rate=" + io::format_double(*record.skip_rate);
  return out;
}

}  // namespace ncdyn
