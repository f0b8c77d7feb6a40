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

#include "app/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace histclock::app {

namespace {

// Non-finite doubles have no JSON spelling; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string config_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report::Report(std::string command, const RunConfig& cfg) : cfg_(&cfg) {
  doc_["meta"] = {{"command", std::move(command)},
                  {"config_hash", config_hash(cfg.source)},
                  {"rng_seed", cfg.rng_seed},
                  {"version", HISTCLOCK_VERSION}};
  doc_["scalars"] = json::object();
  doc_["series"] = json::object();
  doc_["checks"] = json::object();
  doc_["values"] = json::object();
}

void Report::scalar(const std::string& name, double value, double tolerance) {
  if (!cfg_->wants(name)) return;
  doc_["scalars"][name] = {{"value", number(value)}, {"tolerance", tolerance}};
}

void Report::complex_scalar(const std::string& name, Complex<double> value, double tolerance) {
  if (!cfg_->wants(name)) return;
  doc_["scalars"][name] = {{"value", json::array({number(value.real()), number(value.imag())})},
                           {"tolerance", tolerance}};
}

void Report::value(const std::string& name, json v) {
  if (!cfg_->wants(name)) return;
  doc_["values"][name] = std::move(v);
}

void Report::series(const std::string& name, Series s) {
  if (!cfg_->wants(name)) return;
  json rows = json::array();
  for (const auto& r : s.rows) {
    json row = json::array();
    for (double v : r) row.push_back(number(v));
    rows.push_back(std::move(row));
  }
  doc_["series"][name] = {{"columns", s.columns}, {"rows", std::move(rows)}};
}

void Report::check(const std::string& name, bool passed, double measured, double tolerance,
                   const std::string& detail) {
  json c = {{"passed", passed}, {"measured", number(measured)}, {"tolerance", tolerance}};
  if (!detail.empty()) c["detail"] = detail;
  doc_["checks"][name] = std::move(c);
}

void Report::set_wall_time(double seconds) { doc_["meta"]["wall_time_s"] = seconds; }

bool Report::all_passed() const {
  for (const auto& c : doc_["checks"]) {
    if (!c["passed"].get<bool>()) return false;
  }
  return true;
}

std::size_t Report::check_count() const { return doc_["checks"].size(); }

std::string Report::to_json() const { return doc_.dump(2) + "\n"; }

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "section,name,key,value\n";
  auto cell = [](const json& v) {
    if (v.is_number()) return format_double(v.get<double>());
    if (v.is_string()) return csv_field(v.get<std::string>());
    return csv_field(v.dump());
  };
  for (auto it = doc_["meta"].begin(); it != doc_["meta"].end(); ++it) {
    out << "meta," << it.key() << ",," << cell(it.value()) << "\n";
  }
  for (auto it = doc_["scalars"].begin(); it != doc_["scalars"].end(); ++it) {
    out << "scalar," << it.key() << ",value," << cell(it.value()["value"]) << "\n";
    out << "scalar," << it.key() << ",tolerance," << cell(it.value()["tolerance"]) << "\n";
  }
  for (auto it = doc_["checks"].begin(); it != doc_["checks"].end(); ++it) {
    out << "check," << it.key() << ",passed," << (it.value()["passed"].get<bool>() ? "true" : "false") << "\n";
    out << "check," << it.key() << ",measured," << cell(it.value()["measured"]) << "\n";
  }
  for (auto it = doc_["series"].begin(); it != doc_["series"].end(); ++it) {
    const json& cols = it.value()["columns"];
    out << "\n# series " << it.key() << "\n";
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << csv_field(cols[c].get<std::string>());
    out << "\n";
    for (const auto& row : it.value()["rows"]) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell(row[c]);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace histclock::app
