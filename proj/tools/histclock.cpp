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

// histclock: history-state simulations from a JSON run configuration.
//
//   histclock simulate --config run.json
//   histclock bounds   --config run.json --format csv --out bounds.csv
//   histclock power    --config run.json --samples 20000 --seed 7
//   histclock measure  --config run.json --shots 1000000
//   histclock verify   [--config run.json] [--seed 3]

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "app/commands.hpp"

namespace {

using namespace histclock::app;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<long long> shots;
  std::optional<long long> samples;
  std::optional<unsigned> workers;
  bool timing = false;
};

RunConfig effective_config(const Options& opt) {
  json j = opt.config_path.empty() ? json::object() : parse_json_text([&] {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) throw ConfigError(opt.config_path, "cannot open configuration file");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }());
  if (!j.is_object()) throw ConfigError("(root)", "expected a JSON object");
  // Command-line overrides become part of the configuration, and so of its hash.
  if (opt.seed) j["rng_seed"] = *opt.seed;
  if (opt.shots) j["shots"] = *opt.shots;
  if (opt.samples) j["mc_samples"] = *opt.samples;
  if (opt.workers) j["workers"] = *opt.workers;
  return parse_config(j);
}

int run(const std::string& verb, const Options& opt) {
  RunConfig cfg;
  try {
    cfg = effective_config(opt);
  } catch (const ConfigError& e) {
    std::cerr << "histclock: config error at " << e.what() << "\n";
    return kConfigError;
  } catch (const histclock::Error& e) {
    std::cerr << "histclock: config error: " << e.what() << "\n";
    return kConfigError;
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<Report> rep;
  try {
    if (verb == "simulate") rep = run_simulate(cfg);
    else if (verb == "bounds") rep = run_bounds(cfg);
    else if (verb == "power") rep = run_power(cfg);
    else if (verb == "measure") rep = run_measure(cfg);
    else rep = run_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "histclock: config error at " << e.what() << "\n";
    return kConfigError;
  } catch (const histclock::Error& e) {
    std::cerr << "histclock: " << e.what() << "\n";
    return e.code() == histclock::Errc::contract_violation ? kInvariantFailure : kConfigError;
  }
  if (opt.timing) {
    rep->set_wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }

  const std::string text = opt.format == "csv" ? rep->to_csv() : rep->to_json();
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "histclock: cannot write " << opt.out_path << "\n";
      return kConfigError;
    }
    out << text;
  }
  if (!rep->all_passed()) {
    for (auto it = rep->document()["checks"].begin(); it != rep->document()["checks"].end(); ++it) {
      if (!it.value()["passed"].get<bool>()) std::cerr << "histclock: check failed: " << it.key() << "\n";
    }
    return kInvariantFailure;
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"History-state simulations for discrete quantum clocks"};
  app.set_version_flag("--version", std::string(HISTCLOCK_VERSION));
  app.require_subcommand(1);

  Options opt;
  for (const char* verb : {"simulate", "bounds", "power", "measure", "verify"}) {
    CLI::App* sub = app.add_subcommand(verb);
    auto* cfg_opt = sub->add_option("--config", opt.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    if (std::string(verb) != "verify") cfg_opt->required();
    sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
    sub->add_option("--seed", opt.seed, "override rng_seed");
    sub->add_option("--shots", opt.shots, "override shots")->check(CLI::NonNegativeNumber);
    sub->add_option("--samples", opt.samples, "override mc_samples")->check(CLI::PositiveNumber);
    sub->add_option("--workers", opt.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", opt.timing, "include wall time in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return run(app.get_subcommands().front()->get_name(), opt);
}
