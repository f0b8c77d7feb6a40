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

#include "app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace histclock::app {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) { throw ConfigError(field, message); }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

Index get_count(const json& j, const std::string& field, Index min_value) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min_value) fail(field, "must be >= " + std::to_string(min_value));
  return static_cast<Index>(v);
}

std::uint64_t get_seed(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    fail(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

RealVector<double> real_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of numbers");
  RealVector<double> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = get_number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

StateVector<double> complex_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array");
  StateVector<double> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

void parse_evolution(const json& ev, RunConfig& cfg) {
  if (!ev.is_object()) fail("evolution", "expected an object");
  if (!ev.contains("type") || !ev["type"].is_string()) fail("evolution.type", "expected \"constant\", \"steps\" or \"weyl\"");
  const std::string type = ev["type"].get<std::string>();
  cfg.evolution_type = type;
  cfg.has_evolution = true;
  const Index d = cfg.system_dim;
  const Index n = cfg.clock_steps;

  if (type == "weyl") {
    check_keys(ev, "evolution", {"type"});
    if (d < 2) fail("system_dim", "weyl evolution needs system_dim >= 2");
    if (n != d * d) fail("clock_steps", "weyl evolution needs clock_steps = system_dim^2 = " + std::to_string(d * d));
    cfg.spec = WeylEvolution{d};
    return;
  }

  if (type == "steps") {
    check_keys(ev, "evolution", {"type", "steps"});
    if (!ev.contains("steps") || !ev["steps"].is_array()) fail("evolution.steps", "expected an array of matrices");
    const json& steps = ev["steps"];
    if (static_cast<Index>(steps.size()) != n) {
      fail("evolution.steps", "expected clock_steps = " + std::to_string(n) + " matrices, got " + std::to_string(steps.size()));
    }
    StepSequence<double> seq;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      const std::string f = "evolution.steps[" + std::to_string(t) + "]";
      ComplexMatrix<double> u = matrix_from_json(steps[t], f);
      if (u.rows() != d || u.cols() != d) fail(f, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
      seq.steps.push_back(std::move(u));
    }
    cfg.spec = std::move(seq);
    return;
  }

  if (type == "constant") {
    check_keys(ev, "evolution", {"type", "hamiltonian", "energies", "weights", "eigenvectors", "final_time"});
    if (ev.contains("final_time")) {
      cfg.final_time = get_number(ev["final_time"], "evolution.final_time");
      if (*cfg.final_time < 0) fail("evolution.final_time", "must be non-negative");
    }
    const bool has_h = ev.contains("hamiltonian");
    const bool has_e = ev.contains("energies");
    if (has_h == has_e) fail("evolution", "constant evolution needs exactly one of \"hamiltonian\" or \"energies\"");
    ConstantHamiltonian<double> c;
    c.steps = n;
    c.final_time = cfg.final_time;
    if (has_h) {
      if (ev.contains("weights") || ev.contains("eigenvectors")) {
        fail("evolution", "\"weights\" and \"eigenvectors\" go with \"energies\", not \"hamiltonian\"");
      }
      c.hamiltonian = matrix_from_json(ev["hamiltonian"], "evolution.hamiltonian");
      if (c.hamiltonian.rows() != d || c.hamiltonian.cols() != d) {
        fail("evolution.hamiltonian", "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
      }
      cfg.spec = std::move(c);
      return;
    }
    const RealVector<double> e = real_vector(ev["energies"], "evolution.energies");
    if (e.size() != d) fail("evolution.energies", "expected system_dim = " + std::to_string(d) + " energies");
    ComplexMatrix<double> v = ComplexMatrix<double>::Identity(d, d);
    if (ev.contains("eigenvectors")) {
      v = matrix_from_json(ev["eigenvectors"], "evolution.eigenvectors");
      if (v.rows() != d || v.cols() != d) fail("evolution.eigenvectors", "expected a square matrix matching energies");
      if (!is_unitary(v, cfg.tol.algebraic)) fail("evolution.eigenvectors", "columns are not orthonormal");
    }
    c = ConstantHamiltonian<double>::from_spectrum(e, v, n, cfg.final_time);
    if (ev.contains("weights")) {
      const RealVector<double> w = real_vector(ev["weights"], "evolution.weights");
      if (w.size() != d) fail("evolution.weights", "expected one weight per energy");
      if ((w.array() < 0).any()) fail("evolution.weights", "weights must be non-negative");
      if (std::abs(w.sum() - 1.0) > 1e-10) fail("evolution.weights", "weights must sum to 1");
      cfg.spectrum = SpectralWeights<double>::make(std::vector<double>(e.data(), e.data() + d),
                                                   std::vector<double>(w.data(), w.data() + d),
                                                   cfg.tol.degeneracy, 1e-10);
      // Default seed: sum_k sqrt(w_k) |E_k>.
      cfg.seed = v * w.cwiseSqrt().cast<Complex<double>>();
    }
    cfg.spec = std::move(c);
    return;
  }
  fail("evolution.type", "unknown evolution type \"" + type + "\"");
}

void parse_seed(const json& s, RunConfig& cfg) {
  if (!s.is_object()) fail("seed_state", "expected {\"vector\": [...]} or {\"haar\": seed}");
  check_keys(s, "seed_state", {"vector", "haar"});
  if (s.contains("vector") == s.contains("haar")) fail("seed_state", "give exactly one of \"vector\" or \"haar\"");
  if (s.contains("haar")) {
    cfg.seed = haar_state<double>(cfg.system_dim, get_seed(s["haar"], "seed_state.haar"));
    return;
  }
  StateVector<double> v = complex_vector(s["vector"], "seed_state.vector");
  if (v.size() != cfg.system_dim) fail("seed_state.vector", "expected system_dim = " + std::to_string(cfg.system_dim) + " entries");
  if (std::abs(v.norm() - 1.0) > 1e-10) fail("seed_state.vector", "vector is not normalized");
  cfg.seed = std::move(v);
}

}  // namespace

bool RunConfig::wants(const std::string& name) const {
  return outputs.empty() || std::find(outputs.begin(), outputs.end(), name) != outputs.end();
}

Complex<double> complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {get_number(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {get_number(j[0], field + "[0]"), get_number(j[1], field + "[1]")};
  fail(field, "expected a number or an [re, im] pair");
}

json complex_to_json(Complex<double> z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix<double> matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(field + "[0]", "expected a non-empty row");
  ComplexMatrix<double> m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(rf, "rows must all have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = complex_from_json(j[r][c], rf + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix<double>& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "invalid JSON");
  }
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) fail("(root)", "expected a JSON object");
  check_keys(j, "", {"system_dim", "clock_steps", "evolution", "seed_state", "outputs", "shots", "mc_samples",
                     "rng_seed", "tolerances", "sweep", "workers"});
  RunConfig cfg;
  cfg.source = j;
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    check_keys(t, "tolerances", {"algebraic", "spectral", "statistical", "schmidt_rank", "degeneracy"});
    auto pos = [&](const char* key, double& dst) {
      if (!t.contains(key)) return;
      dst = get_number(t[key], std::string("tolerances.") + key);
      if (dst <= 0) fail(std::string("tolerances.") + key, "must be positive");
    };
    pos("algebraic", cfg.tol.algebraic);
    pos("spectral", cfg.tol.spectral);
    pos("statistical", cfg.tol.statistical);
    pos("schmidt_rank", cfg.tol.schmidt_rank);
    pos("degeneracy", cfg.tol.degeneracy);
  }
  if (j.contains("rng_seed")) cfg.rng_seed = get_seed(j["rng_seed"], "rng_seed");
  if (j.contains("shots")) cfg.shots = get_count(j["shots"], "shots", 0);
  if (j.contains("mc_samples")) cfg.mc_samples = get_count(j["mc_samples"], "mc_samples", 2);
  if (j.contains("workers")) cfg.workers = static_cast<unsigned>(get_count(j["workers"], "workers", 1));
  if (j.contains("outputs")) {
    if (!j["outputs"].is_array()) fail("outputs", "expected an array of report names");
    for (std::size_t i = 0; i < j["outputs"].size(); ++i) {
      if (!j["outputs"][i].is_string()) fail("outputs[" + std::to_string(i) + "]", "expected a string");
      cfg.outputs.push_back(j["outputs"][i].get<std::string>());
    }
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) fail("sweep", "expected an object");
    check_keys(s, "sweep", {"t_min", "t_max", "points"});
    Sweep sw;
    if (s.contains("t_min")) sw.t_min = get_number(s["t_min"], "sweep.t_min");
    if (s.contains("t_max")) sw.t_max = get_number(s["t_max"], "sweep.t_max");
    if (s.contains("points")) sw.points = get_count(s["points"], "sweep.points", 2);
    if (sw.t_min < 0 || sw.t_max < sw.t_min) fail("sweep", "need 0 <= t_min <= t_max");
    cfg.sweep = sw;
  }

  const bool has_ev = j.contains("evolution");
  if (!has_ev) {
    if (j.contains("system_dim") || j.contains("clock_steps") || j.contains("seed_state")) {
      fail("evolution", "required when system_dim, clock_steps or seed_state is given");
    }
    return cfg;
  }
  if (!j.contains("system_dim")) fail("system_dim", "required");
  if (!j.contains("clock_steps")) fail("clock_steps", "required");
  cfg.system_dim = get_count(j["system_dim"], "system_dim", 1);
  cfg.clock_steps = get_count(j["clock_steps"], "clock_steps", 1);
  if (cfg.system_dim * cfg.clock_steps > 4096) fail("system_dim", "system_dim * clock_steps must not exceed 4096");
  cfg.seed = basis_state<double>(cfg.system_dim, 0);
  parse_evolution(j["evolution"], cfg);
  if (j.contains("seed_state")) {
    parse_seed(j["seed_state"], cfg);
    cfg.seed_explicit = true;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(parse_json_text(buf.str()));
}

}  // namespace histclock::app
