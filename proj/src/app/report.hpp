// Copyright 2026 The histclock Authors
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

#ifndef HISTCLOCK_APP_REPORT_HPP
#define HISTCLOCK_APP_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "app/config.hpp"

namespace histclock::app {

/// Column-oriented data series with a fixed column order.
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Report document. Keys are emitted sorted, so two runs with the same
/// configuration serialize to identical bytes.
class Report {
 public:
  Report(std::string command, const RunConfig& cfg);

  void scalar(const std::string& name, double value, double tolerance);
  void complex_scalar(const std::string& name, Complex<double> value, double tolerance);
  void value(const std::string& name, json v);
  void series(const std::string& name, Series s);
  void check(const std::string& name, bool passed, double measured, double tolerance, const std::string& detail = "");
  void set_wall_time(double seconds);

  bool all_passed() const;
  std::size_t check_count() const;
  const json& document() const { return doc_; }

  std::string to_json() const;
  std::string to_csv() const;

 private:
  const RunConfig* cfg_;
  json doc_;
};

/// FNV-1a over the compact serialization of `j`.
std::string config_hash(const json& j);

}  // namespace histclock::app

#endif  // HISTCLOCK_APP_REPORT_HPP
