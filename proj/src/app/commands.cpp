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

#include "app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace histclock::app {

namespace {

void require_evolution(const RunConfig& cfg) {
  if (!cfg.has_evolution) throw ConfigError("evolution", "this command needs an evolution");
}

json real_array(const RealVector<double>& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// |est - exact| in units of the standard error. Differences at roundoff level
// count as agreement, since the standard error can itself vanish.
double z_score(double est, double exact, double se, double algebraic) {
  const double diff = std::abs(est - exact);
  if (diff <= algebraic) return 0.0;
  return se > 0 ? diff / se : std::numeric_limits<double>::infinity();
}

}  // namespace

Report run_simulate(const RunConfig& cfg) {
  require_evolution(cfg);
  Report rep("simulate", cfg);
  const auto& tol = cfg.tol;
  const HistoryState<double> h = build_history_state(cfg.seed, cfg.spec, tol.algebraic);
  const auto s = h.schmidt();
  const Index d = h.system_dim();
  const Index n = h.clock_dim();

  rep.value("schmidt_values", real_array(s.values));
  rep.scalar("schmidt_rank", double(s.rank(tol.schmidt_rank)), tol.schmidt_rank);
  rep.scalar("entropy", vn_entropy(s, tol.algebraic), tol.algebraic);
  const double e2s = e2_from_schmidt(s);
  const double e2o = e2_from_overlaps(h);
  rep.scalar("e2_schmidt", e2s, tol.algebraic);
  rep.scalar("e2_overlaps", e2o, tol.algebraic);
  rep.check("e2_paths_agree", std::abs(e2s - e2o) <= tol.algebraic, std::abs(e2s - e2o), tol.algebraic);

  double worst_norm = std::abs(h.norm() - 1.0);
  for (Index t = 0; t < n; ++t) worst_norm = std::max(worst_norm, std::abs(h.system_state(t).norm() - 1.0));
  rep.check("history_normalized", worst_norm <= tol.algebraic, worst_norm, tol.algebraic);

  const auto er = eigen_residual(cfg.spec, h, tol.algebraic);
  rep.scalar("eigen_residual", er.residual, tol.algebraic);
  rep.scalar("eigen_sector", double(er.sector), 0.0);

  const auto sb = special_clock_basis(h, tol.schmidt_rank);
  const double sb_res = (sb.reconstruct() - h.amplitudes()).norm();
  rep.scalar("special_basis_residual", sb_res, tol.algebraic);
  rep.check("special_basis_reconstruction", sb_res <= tol.algebraic, sb_res, tol.algebraic);

  if (d == n) {
    const auto cr = conjugate_representation(h, tol.schmidt_rank);
    const double ce = conjugate_entropy(cr);
    rep.scalar("conjugate_entropy", ce, tol.algebraic);
    const double slack = vn_entropy(s, tol.algebraic) + ce - std::log2(double(n));
    rep.check("entropic_uncertainty", slack >= -1e-9, slack, 1e-9);
    rep.check("conjugate_clock_evolution", cr.clock_evolution_residual <= tol.algebraic, cr.clock_evolution_residual,
              tol.algebraic);
  }

  Series ov{{"t_prime", "t", "abs_overlap"}, {}};
  const ComplexMatrix<double> states = h.system_states();
  for (Index tp = 0; tp < n; ++tp) {
    for (Index t = tp + 1; t < n; ++t) ov.rows.push_back({double(tp), double(t), std::abs(states.col(tp).dot(states.col(t)))});
  }
  rep.series("overlaps", std::move(ov));
  return rep;
}

Report run_bounds(const RunConfig& cfg) {
  require_evolution(cfg);
  const auto* c = std::get_if<ConstantHamiltonian<double>>(&cfg.spec);
  if (!c) throw ConfigError("evolution.type", "bounds needs a constant evolution");
  if (cfg.clock_steps < 2) throw ConfigError("clock_steps", "bounds needs clock_steps >= 2");
  Report rep("bounds", cfg);
  const auto& tol = cfg.tol;
  const Index n = cfg.clock_steps;
  const SpectralWeights<double> w =
      cfg.spectrum && !cfg.seed_explicit ? *cfg.spectrum
                                         : SpectralWeights<double>::from_state(c->hamiltonian, cfg.seed, tol.degeneracy);
  const double tf = cfg.final_time.value_or(double(n - 1));

  const double analytic = e2_constant_analytic(w, tf, n);
  const double upper = e2_upper_bound(w);
  const double phi = spectral_overlap_angle(w, tf);
  const double lower = e2_lower_bound(phi, n);
  rep.scalar("final_time", tf, 0.0);
  rep.scalar("e2_analytic", analytic, tol.algebraic);
  rep.scalar("e2_upper_bound", upper, tol.algebraic);
  rep.scalar("e2_lower_bound", lower, tol.algebraic);
  rep.scalar("e2_continuum", e2_continuum(w, tf), tol.algebraic);
  rep.scalar("e2_small_t", e2_small_t(w, tf, n), tol.algebraic);
  rep.scalar("phi", phi, tol.algebraic);
  rep.scalar("variance", w.variance(), tol.algebraic);

  // Brute-force comparison against the explicitly built history.
  const HistoryState<double> h = build_history_state(cfg.seed, cfg.spec, tol.algebraic);
  const double brute = e2_from_overlaps(h);
  rep.scalar("e2_brute_force", brute, tol.algebraic);
  rep.check("analytic_matches_history", std::abs(brute - analytic) <= tol.algebraic, std::abs(brute - analytic),
            tol.algebraic);

  const Sweep sw = cfg.sweep.value_or(Sweep{0.0, tf, 21});
  Series s{{"t_f", "e2_analytic", "e2_upper", "e2_lower", "phi", "e2_continuum", "e2_lower_continuum",
            "curvature_gap", "curvature_predicted", "appendix_min_f", "translation_ok"},
           {}};
  double worst_sandwich = 0;
  double worst_f = 0;
  bool translation_ok = true;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (Index i = 0; i < sw.points; ++i) {
    const double t = sw.t_min + (sw.t_max - sw.t_min) * double(i) / double(sw.points - 1);
    const double a = e2_constant_analytic(w, t, n);
    const double p = spectral_overlap_angle(w, t);
    const double lo = e2_lower_bound(p, n);
    worst_sandwich = std::max({worst_sandwich, lo - a - 1e-10, a - upper - 1e-12});
    double gap = nan;
    double pred = nan;
    if (n > 2) {
      const auto g = curvature_gap(w, t, n);
      gap = g.gap;
      pred = g.predicted;
    }
    const auto app = appendix_check(w, t, 100, n, tol.algebraic);
    translation_ok = translation_ok && app.translation_ok;
    if (app.short_time) worst_f = std::max(worst_f, -app.min_f);
    s.rows.push_back({t, a, upper, lo, p, e2_continuum(w, t), e2_lower_bound_continuum(p), gap, pred,
                      app.short_time ? app.min_f : nan, app.translation_ok ? 1.0 : 0.0});
  }
  rep.series("sweep", std::move(s));
  rep.check("bound_sandwich", worst_sandwich <= 0, worst_sandwich, 1e-10);
  rep.check("appendix_f_nonnegative", worst_f <= tol.algebraic, worst_f, tol.algebraic);
  rep.check("translation_inequality", translation_ok, translation_ok ? 0.0 : 1.0, 0.0);
  return rep;
}

Report run_power(const RunConfig& cfg) {
  require_evolution(cfg);
  Report rep("power", cfg);
  const auto& tol = cfg.tol;
  const double analytic = entangling_power_analytic(cfg.spec, tol.algebraic);
  const double e2w = e2_operator(cfg.spec, tol.algebraic);
  const HistoryState<double> oh = operator_history_state(cfg.spec, tol.algebraic);
  const auto os = oh.schmidt();
  rep.scalar("entangling_power", analytic, tol.algebraic);
  rep.scalar("e2_w", e2w, tol.algebraic);
  rep.scalar("entropy_w", vn_entropy(os, tol.algebraic), tol.algebraic);
  rep.value("operator_schmidt_values", real_array(os.values));
  if (analytic < 2.0) rep.scalar("effective_dimension", effective_dimension(analytic), tol.algebraic);
  const double e2_path = e2_from_schmidt(os);
  rep.check("operator_e2_paths_agree", std::abs(e2_path - e2w) <= tol.algebraic, std::abs(e2_path - e2w),
            tol.algebraic);

  const auto mc = entangling_power_mc(cfg.spec, cfg.mc_samples, cfg.rng_seed, cfg.workers, tol.algebraic);
  rep.scalar("mc_mean", mc.mean, tol.statistical * mc.std_error);
  rep.scalar("mc_stderr", mc.std_error, 0.0);
  rep.scalar("mc_samples", double(mc.samples), 0.0);
  if (mc.mean < 2.0) rep.scalar("mc_effective_dimension", effective_dimension(mc.mean), tol.statistical * mc.std_error);
  const double z = z_score(mc.mean, analytic, mc.std_error, tol.algebraic);
  rep.check("mc_matches_analytic", z <= tol.statistical, z, tol.statistical);
  return rep;
}

Report run_measure(const RunConfig& cfg) {
  require_evolution(cfg);
  Report rep("measure", cfg);
  const auto& tol = cfg.tol;
  const HistoryState<double> h = build_history_state(cfg.seed, cfg.spec, tol.algebraic);
  const Index n = h.clock_dim();
  const ComplexMatrix<double> states = h.system_states();

  std::vector<std::pair<Index, Index>> pairs;
  for (Index tp = 0; tp < n; ++tp) {
    for (Index t = tp + 1; t < n; ++t) {
      if (n <= 12 || tp == 0) pairs.emplace_back(tp, t);
    }
  }

  Series ps{{"t_prime", "t", "x_exact", "y_exact", "x_estimate", "y_estimate", "x_stderr", "y_stderr"}, {}};
  double worst_overlap = 0;
  double worst_z = 0;
  std::uint64_t stream = 0;
  for (auto [tp, t] : pairs) {
    const auto e = clock_pair_expectations(h, t, tp);
    const Complex<double> direct = states.col(tp).dot(states.col(t)) / double(n);
    worst_overlap = std::max(worst_overlap, std::abs(e.overlap() - direct));
    const auto rx = shot_sample(h, PairObservable::X, t, tp, cfg.shots, derive_seed(cfg.rng_seed, stream++));
    const auto ry = shot_sample(h, PairObservable::Y, t, tp, cfg.shots, derive_seed(cfg.rng_seed, stream++));
    worst_z = std::max({worst_z, z_score(rx.estimate, rx.exact, rx.std_error, tol.algebraic),
                        z_score(ry.estimate, ry.exact, ry.std_error, tol.algebraic)});
    ps.rows.push_back({double(tp), double(t), e.x, e.y, rx.estimate, ry.estimate, rx.std_error, ry.std_error});
  }
  rep.series("pair_expectations", std::move(ps));
  rep.check("overlap_reconstruction", worst_overlap <= tol.algebraic, worst_overlap, tol.algebraic);

  Series ts{{"t", "re_estimate", "im_estimate", "re_exact", "im_exact", "re_stderr", "im_stderr"}, {}};
  const auto us = cumulative_unitaries(cfg.spec, tol.algebraic);
  const double d = double(h.system_dim());
  double worst_trace = 0;
  for (Index t = 0; t < n; ++t) {
    const auto est = operator_overlap_protocol(cfg.spec, t, 0, cfg.shots, derive_seed(cfg.rng_seed, stream++), tol.algebraic);
    const Complex<double> direct = us[static_cast<std::size_t>(t)].trace() / (double(n) * d);
    worst_trace = std::max(worst_trace, std::abs(est.exact - direct));
    worst_z = std::max({worst_z, z_score(est.value.real(), est.exact.real(), est.std_error_re, tol.algebraic),
                        z_score(est.value.imag(), est.exact.imag(), est.std_error_im, tol.algebraic)});
    ts.rows.push_back({double(t), est.value.real(), est.value.imag(), est.exact.real(), est.exact.imag(),
                       est.std_error_re, est.std_error_im});
  }
  rep.series("operator_traces", std::move(ts));
  rep.check("operator_trace_recovery", worst_trace <= tol.algebraic, worst_trace, tol.algebraic);
  rep.check("estimates_within_stderr", worst_z <= tol.statistical, worst_z, tol.statistical);

  if (n == 2) {
    const ComplexMatrix<double>& u = us[1];
    const auto r = dqc1(u, cfg.shots, derive_seed(cfg.rng_seed, stream++), tol.algebraic);
    rep.complex_scalar("dqc1_trace_estimate", r.trace_estimate, tol.statistical * std::max(r.std_error_re, r.std_error_im));
    rep.complex_scalar("dqc1_trace_exact", r.trace_exact, tol.algebraic);
    rep.scalar("dqc1_e2_w", r.e2_w, tol.algebraic);
    rep.scalar("dqc1_entangling_power", r.entangling_power, tol.algebraic);
    const double diff = std::abs(r.e2_w - e2_operator(dqc1_spec(u), tol.algebraic));
    rep.check("dqc1_e2_matches_operator", diff <= tol.algebraic, diff, tol.algebraic);
    const double z = std::max(z_score(r.trace_estimate.real(), r.trace_exact.real(), r.std_error_re, tol.algebraic),
                              z_score(r.trace_estimate.imag(), r.trace_exact.imag(), r.std_error_im, tol.algebraic));
    rep.check("dqc1_trace_within_stderr", z <= tol.statistical, z, tol.statistical);
  }
  return rep;
}

}  // namespace histclock::app
