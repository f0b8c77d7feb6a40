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

#ifndef HISTCLOCK_APP_CONFIG_HPP
#define HISTCLOCK_APP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "histclock/histclock.hpp"

namespace histclock::app {

using json = nlohmann::json;

/// Schema or parse failure; `field` is a dotted path or "line L, column C".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Sweep {
  double t_min = 0.0;
  double t_max = 1.0;
  Index points = 21;
};

struct RunConfig {
  Index system_dim = 0;
  Index clock_steps = 0;
  bool has_evolution = false;
  std::string evolution_type;
  EvolutionSpec<double> spec = StepSequence<double>{};
  std::optional<SpectralWeights<double>> spectrum;  // from energies + weights
  std::optional<double> final_time;
  StateVector<double> seed;
  bool seed_explicit = false;
  std::vector<std::string> outputs;
  Index shots = 0;
  Index mc_samples = 1000;
  std::uint64_t rng_seed = 0;
  unsigned workers = 1;
  Tolerances tol;
  std::optional<Sweep> sweep;
  json source;  // effective configuration, used for the report hash

  bool wants(const std::string& name) const;
};

/// Parses JSON text; syntax errors carry line and column.
json parse_json_text(const std::string& text);

RunConfig parse_config(const json& j);

RunConfig load_config(const std::string& path);

/// Complex entries are written as [re, im]; plain numbers are accepted as real.
Complex<double> complex_from_json(const json& j, const std::string& field);
json complex_to_json(Complex<double> z);
ComplexMatrix<double> matrix_from_json(const json& j, const std::string& field);
json matrix_to_json(const ComplexMatrix<double>& m);

}  // namespace histclock::app

#endif  // HISTCLOCK_APP_CONFIG_HPP
