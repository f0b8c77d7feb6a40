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

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "app/commands.hpp"

namespace histclock::app {

namespace {

namespace rnd = histclock::random;
using Matrix = ComplexMatrix<double>;
using Vector = StateVector<double>;

struct Outcome {
  double measured = 0;
  double tolerance = 0;
  bool passed = false;
};

Outcome at_most(double measured, double tolerance) { return {measured, tolerance, measured <= tolerance}; }

void run_check(Report& rep, const std::string& name, const std::function<Outcome()>& body) {
  try {
    const Outcome o = body();
    rep.check(name, o.passed, o.measured, o.tolerance);
  } catch (const std::exception& e) {
    rep.check(name, false, std::numeric_limits<double>::infinity(), 0.0, e.what());
  }
}

EvolutionSpec<double> random_closed_spec(rnd::Engine& rng, Index dmax, Index nmax) {
  const Index d = rnd::uniform_index(rng, 1, dmax);
  const Index n = rnd::uniform_index(rng, 1, nmax);
  return rnd::closed_step_sequence<double>(rng, d, n);
}

}  // namespace

Report run_verify(const RunConfig& cfg) {
  Report rep("verify", cfg);
  const Tolerances& tol = cfg.tol;
  const std::uint64_t master = cfg.rng_seed;
  std::uint64_t stream = 0;
  auto engine = [&] { return rnd::Engine(derive_seed(master, stream++)); };

  run_check(rep, "linalg.dft_unitary", [&] {
    double worst = 0;
    for (Index n : {1, 2, 3, 8, 17, 64, 256}) {
      const Matrix f = dft_matrix<double>(n);
      worst = std::max(worst, max_abs_diff(f.adjoint() * f, Matrix::Identity(n, n)));
    }
    return at_most(worst, 1e-12);
  });

  run_check(rep, "linalg.schmidt_matches_partial_trace", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 40; ++i) {
      const Index da = rnd::uniform_index(rng, 1, 8);
      const Index db = rnd::uniform_index(rng, 1, 8);
      const Vector v = sample_haar_state<double>(da * db, rng);
      const auto s = schmidt_split(v, da, db);
      Eigen::SelfAdjointEigenSolver<Matrix> es(partial_trace(v, da, db, Subsystem::A));
      RealVector<double> ev = es.eigenvalues().reverse().head(s.values.size());
      worst = std::max(worst, (ev.cwiseMax(0.0).cwiseSqrt() - s.values).cwiseAbs().maxCoeff());
      worst = std::max(worst, (s.reconstruct() - v).norm());
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "linalg.expm_unitary", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 6);
      const Matrix u = hermitian_expm(rnd::hermitian<double>(rng, d), rnd::uniform_real<double>(rng, -3, 3));
      worst = std::max(worst, max_abs_diff(u.adjoint() * u, Matrix::Identity(d, d)));
      worst = std::max(worst, std::abs(std::abs(u.determinant()) - 1.0));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "history.normalization", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
      const auto spec = random_closed_spec(rng, 5, 12);
      const auto h = build_history_state(sample_haar_state<double>(system_dim(spec), rng), spec);
      worst = std::max(worst, std::abs(h.norm() - 1.0));
      for (Index t = 0; t < h.clock_dim(); ++t) worst = std::max(worst, std::abs(h.system_state(t).norm() - 1.0));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "history.eigen_residual", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
      const auto spec = random_closed_spec(rng, 4, 10);
      const auto h = build_history_state(sample_haar_state<double>(system_dim(spec), rng), spec);
      const auto r = eigen_residual(spec, h);
      worst = std::max(worst, r.sector == 0 ? r.residual : 1.0);
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "history.wheeler_dewitt", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const auto spec = random_closed_spec(rng, 3, 6);
      const auto h = build_history_state(sample_haar_state<double>(system_dim(spec), rng), spec);
      const Matrix j = wheeler_dewitt_generator(spec);
      const Matrix u = global_unitary(spec);
      worst = std::max(worst, max_abs_diff(hermitian_expm(j, 1.0, 1e-8), u));
      worst = std::max(worst, (j * h.amplitudes()).norm());
    }
    return at_most(worst, tol.spectral);
  });

  run_check(rep, "history.special_basis", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
      const auto spec = rnd::step_sequence<double>(rng, rnd::uniform_index(rng, 1, 6), rnd::uniform_index(rng, 1, 16));
      const auto h = build_history_state(sample_haar_state<double>(system_dim(EvolutionSpec<double>(spec)), rng),
                                         EvolutionSpec<double>(spec));
      worst = std::max(worst, (special_clock_basis(h).reconstruct() - h.amplitudes()).norm());
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "history.weyl_overlap_sum", [&, rng = engine()]() mutable {
    double worst = 0;
    for (Index d : {2, 3, 4}) {
      const auto h = build_history_state(sample_haar_state<double>(d, rng), EvolutionSpec<double>(WeylEvolution{d}));
      const Matrix g = h.system_states().adjoint() * h.system_states();
      worst = std::max(worst, std::abs(g.cwiseAbs2().sum() - double(d * d * d)));
    }
    return at_most(worst, tol.spectral);
  });

  run_check(rep, "entanglement.weyl_maximal", [&, rng = engine()]() mutable {
    double worst = 0;
    for (Index d : {2, 3, 4}) {
      const auto h = build_history_state(sample_haar_state<double>(d, rng), EvolutionSpec<double>(WeylEvolution{d}));
      worst = std::max(worst, std::abs(vn_entropy(h.schmidt()) - std::log2(double(d))));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "entanglement.e2_paths_agree", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 5);
      const Index n = rnd::uniform_index(rng, 1, 20);
      const auto h = build_history_state(sample_haar_state<double>(d, rng),
                                         EvolutionSpec<double>(rnd::step_sequence<double>(rng, d, n)));
      worst = std::max(worst, std::abs(e2_from_schmidt(h.schmidt()) - e2_from_overlaps(h)));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "entanglement.analytic_vs_history", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const Index levels = rnd::uniform_index(rng, 1, 6);
      const Index n = rnd::uniform_index(rng, 2, 32);
      const double tf = rnd::uniform_real<double>(rng, 1e-3, 10.0);
      const auto w = rnd::spectral_weights<double>(rng, levels, -2.0, 2.0);
      RealVector<double> e(static_cast<Index>(w.size()));
      Vector seed(static_cast<Index>(w.size()));
      for (std::size_t k = 0; k < w.size(); ++k) {
        e(static_cast<Index>(k)) = w.energies()[k];
        seed(static_cast<Index>(k)) = std::sqrt(w.weights()[k]);
      }
      const auto spec = ConstantHamiltonian<double>::diagonal(e, n, tf);
      const auto h = build_history_state(seed, EvolutionSpec<double>(spec));
      worst = std::max(worst, std::abs(e2_from_overlaps(h) - e2_constant_analytic(w, tf, n)));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "entanglement.bound_sandwich", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 300; ++i) {
      const auto w = rnd::spectral_weights<double>(rng, rnd::uniform_index(rng, 1, 6), -2.0, 2.0);
      const Index n = rnd::uniform_index(rng, 2, 32);
      const double tf = rnd::uniform_real<double>(rng, 1e-3, 10.0);
      const double e2 = e2_constant_analytic(w, tf, n);
      const double lo = e2_lower_bound(spectral_overlap_angle(w, tf), n);
      worst = std::max({worst, lo - 1e-10 - e2, e2 - e2_upper_bound(w) - 1e-12});
    }
    return at_most(worst, 0.0);
  });

  run_check(rep, "entanglement.periodicity", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
      const Index n = rnd::uniform_index(rng, 2, 16);
      const double tf = rnd::uniform_real<double>(rng, 0.5, 5.0);
      const auto w = rnd::spectral_weights<double>(rng, 3, -1.0, 1.0);
      std::vector<double> e = w.energies();
      e[0] += two_pi<double> * double(n - 1) / tf;
      const auto shifted = SpectralWeights<double>::make(e, w.weights());
      worst = std::max(worst, std::abs(e2_constant_analytic(w, tf, n) - e2_constant_analytic(shifted, tf, n)));
    }
    return at_most(worst, tol.spectral);
  });

  run_check(rep, "entanglement.geodesic_saturation", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const Index d = rnd::uniform_index(rng, 2, 4);
      const Index n = rnd::uniform_index(rng, 2, 24);
      const double tf = rnd::uniform_real<double>(rng, 0.1, 5.0);
      const Vector a = sample_haar_state<double>(d, rng);
      const Vector b = sample_haar_state<double>(d, rng);
      const auto g = geodesic_hamiltonian(a, b, tf);
      const auto h = build_history_state(a, EvolutionSpec<double>(ConstantHamiltonian<double>{g.hamiltonian, n, tf}));
      worst = std::max(worst, std::abs(e2_from_overlaps(h) - e2_lower_bound(g.spec.phi, n)));
      worst = std::max(worst, (hermitian_expm(g.hamiltonian, tf) * a - b).norm());
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "entanglement.entropic_uncertainty", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 40; ++i) {
      const Index n = rnd::uniform_index(rng, 2, 4);
      const auto h = build_history_state(sample_haar_state<double>(n, rng),
                                         EvolutionSpec<double>(rnd::step_sequence<double>(rng, n, n)));
      const double total = vn_entropy(h.schmidt()) + conjugate_entropy(conjugate_representation(h));
      worst = std::max(worst, std::log2(double(n)) - total);
    }
    return at_most(worst, 1e-9);
  });

  run_check(rep, "entanglement.appendix", [&, rng = engine()]() mutable {
    double worst = 0;
    bool translation = true;
    for (int i = 0; i < 30; ++i) {
      const auto w = rnd::spectral_weights<double>(rng, 4, -1.0, 1.0);
      const double tf = rnd::uniform_real<double>(rng, 0.01, std::numbers::pi);
      const auto rep_a = appendix_check(w, tf, 101, rnd::uniform_index(rng, 2, 32));
      if (!rep_a.short_time) continue;
      worst = std::max({worst, std::abs(rep_a.f_values.front()), std::abs(rep_a.f_values.back()), -rep_a.min_f});
      translation = translation && rep_a.translation_ok;
    }
    return Outcome{worst, tol.algebraic, worst <= tol.algebraic && translation};
  });

  run_check(rep, "entanglement.curvature_gap", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const auto w = rnd::spectral_weights<double>(rng, rnd::uniform_index(rng, 3, 4), -1.0, 1.0);
      const Index n = std::array<Index, 3>{4, 8, 16}[static_cast<std::size_t>(i % 3)];
      const auto g = curvature_gap(w, 1e-2, n);
      worst = std::max(worst, std::abs(g.gap / g.predicted - 1.0));
    }
    return at_most(worst, 0.05);
  });

  run_check(rep, "opstates.weyl_orthogonality", [&] {
    double worst = 0;
    for (Index d = 2; d <= 8; ++d) {
      const auto set = weyl_set<double>(d);
      for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = 0; b < set.size(); ++b) {
          const double expected = a == b ? double(d) : 0.0;
          worst = std::max(worst, std::abs((set[a].adjoint() * set[b]).trace() - expected));
        }
      }
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "opstates.weyl_steps_cumulative", [&] {
    double worst = 0;
    for (Index d = 2; d <= 5; ++d) {
      const auto us = cumulative_unitaries(weyl_steps<double>(d));
      const auto set = weyl_set<double>(d);
      for (std::size_t t = 0; t < set.size(); ++t) worst = std::max(worst, max_abs_diff(us[t], set[t]));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "opstates.channel_state_duality", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 3);
      const Index n = rnd::uniform_index(rng, 1, 8);
      const auto steps = rnd::step_sequence<double>(rng, d, n);
      StepSequence<double> lifted;
      for (const auto& s : steps.steps) lifted.steps.push_back(kron(s, Matrix::Identity(d, d)));
      const auto direct = operator_history_state(EvolutionSpec<double>(steps));
      const auto via_seed = build_history_state(choi_vector<double>(Matrix::Identity(d, d)), EvolutionSpec<double>(lifted));
      worst = std::max(worst, (direct.amplitudes() - via_seed.amplitudes()).norm());
    }
    return at_most(worst, 1e-12);
  });

  run_check(rep, "opstates.control_schmidt_consistency", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 3);
      const Index n = rnd::uniform_index(rng, 1, 8);
      const EvolutionSpec<double> spec = rnd::step_sequence<double>(rng, d, n);
      const RealVector<double> lam = control_operator_schmidt(spec);
      const auto os = operator_history_state(spec).schmidt();
      const Index k = std::min(lam.size(), os.values.size());
      worst = std::max(worst, (lam.head(k) - os.values.head(k)).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(e2_operator(spec) - e2_from_schmidt(os)));
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "opstates.entangling_power_identity", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
      const Index d = rnd::uniform_index(rng, 2, 3);
      const EvolutionSpec<double> spec = rnd::step_sequence<double>(rng, d, rnd::uniform_index(rng, 2, 8));
      const auto mc = entangling_power_mc(spec, 2000, derive_seed(master, 1000 + i), cfg.workers);
      worst = std::max(worst, std::abs(mc.mean - entangling_power_analytic(spec)) / mc.std_error);
    }
    return at_most(worst, tol.statistical);
  });

  run_check(rep, "opstates.circuit_generation", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 4);
      const EvolutionSpec<double> spec = rnd::step_sequence<double>(rng, d, rnd::uniform_index(rng, 1, 10));
      const Vector seed = sample_haar_state<double>(d, rng);
      worst = std::max(worst, (generate_via_circuit(seed, spec).amplitudes() - build_history_state(seed, spec).amplitudes()).norm());
    }
    return at_most(worst, 1e-12);
  });

  run_check(rep, "measurement.overlap_reconstruction", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 4);
      const Index n = rnd::uniform_index(rng, 2, 10);
      const auto h = build_history_state(sample_haar_state<double>(d, rng),
                                         EvolutionSpec<double>(rnd::step_sequence<double>(rng, d, n)));
      const Matrix s = h.system_states();
      for (Index t = 0; t < n; ++t) {
        for (Index tp = 0; tp < n; ++tp) {
          if (t == tp) continue;
          const Complex<double> direct = s.col(tp).dot(s.col(t)) / double(n);
          worst = std::max(worst, std::abs(clock_pair_expectations(h, t, tp).overlap() - direct));
        }
      }
    }
    return at_most(worst, 1e-12);
  });

  run_check(rep, "measurement.operator_traces", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 4);
      const Index n = rnd::uniform_index(rng, 1, 12);
      const EvolutionSpec<double> spec = rnd::step_sequence<double>(rng, d, n);
      const auto us = cumulative_unitaries(spec);
      for (Index t = 0; t < n; ++t) {
        for (Index tp = 0; tp < n; ++tp) {
          const auto est = operator_overlap_protocol(spec, t, tp, 0, 0);
          const Complex<double> direct =
              (us[static_cast<std::size_t>(tp)].adjoint() * us[static_cast<std::size_t>(t)]).trace() / double(n * d);
          worst = std::max(worst, std::abs(est.value - direct));
        }
      }
    }
    return at_most(worst, 1e-12);
  });

  run_check(rep, "measurement.clock_marginal_state", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const Index d = rnd::uniform_index(rng, 1, 3);
      const Index n = rnd::uniform_index(rng, 1, 8);
      const EvolutionSpec<double> spec = rnd::step_sequence<double>(rng, d, n);
      const Matrix rho = clock_marginal(spec);
      Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
      worst = std::max({worst, max_abs_diff(rho, rho.adjoint()), std::abs(rho.trace() - 1.0),
                        std::max(0.0, -es.eigenvalues().minCoeff())});
    }
    return at_most(worst, tol.algebraic);
  });

  run_check(rep, "measurement.dqc1_e2", [&, rng = engine()]() mutable {
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const Matrix u = sample_haar_unitary<double>(rnd::uniform_index(rng, 1, 5), rng);
      const auto r = dqc1(u, 0, 0);
      worst = std::max({worst, std::abs(r.e2_w - e2_operator(dqc1_spec(u))),
                        std::abs(r.trace_estimate - u.trace() / double(u.rows()))});
    }
    return at_most(worst, 1e-12);
  });

  if (cfg.has_evolution) {
    run_check(rep, "config.spec_unitary", [&] {
      validate(cfg.spec, tol.algebraic);
      const Matrix u = global_unitary(cfg.spec, tol.algebraic);
      return at_most(max_abs_diff(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols())), tol.algebraic);
    });
    run_check(rep, "config.history_normalized", [&] {
      const auto h = build_history_state(cfg.seed, cfg.spec, tol.algebraic);
      double worst = std::abs(h.norm() - 1.0);
      for (Index t = 0; t < h.clock_dim(); ++t) worst = std::max(worst, std::abs(h.system_state(t).norm() - 1.0));
      return at_most(worst, tol.algebraic);
    });
    // The eigenvalue condition only applies when the steps close the cycle.
    const auto steps = step_unitaries(cfg.spec, std::numeric_limits<double>::infinity());
    Matrix cycle = Matrix::Identity(cfg.system_dim, cfg.system_dim);
    for (const auto& s : steps) cycle = s * cycle;
    const Complex<double> phase = cycle(0, 0) / std::abs(cycle(0, 0));
    if (std::abs(std::abs(cycle(0, 0)) - 1.0) < tol.algebraic &&
        max_abs_diff(cycle, phase * Matrix::Identity(cfg.system_dim, cfg.system_dim)) < tol.algebraic) {
      run_check(rep, "config.eigen_residual", [&] {
        const auto h = build_history_state(cfg.seed, cfg.spec, tol.algebraic);
        return at_most(eigen_residual(cfg.spec, h, tol.algebraic).residual, tol.algebraic);
      });
    }
  }
  return rep;
}

}  // namespace histclock::app
