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

#ifndef HISTCLOCK_MEASUREMENT_HPP
#define HISTCLOCK_MEASUREMENT_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "histclock/history.hpp"
#include "histclock/linalg.hpp"
#include "histclock/opstates.hpp"

namespace histclock {

/// Clock pair operators on (t', t):
///   X = |t'><t| + |t><t'|,  Y = -i|t'><t| + i|t><t'|,  Projector = |t><t|.
enum class PairObservable { X, Y, Projector };

inline const char* to_string(PairObservable o) {
  switch (o) {
    case PairObservable::X: return "sigma_x";
    case PairObservable::Y: return "sigma_y";
    case PairObservable::Projector: return "projector";
  }
  return "unknown";
}

template <typename Real = double>
struct PairExpectations {
  Real x = 0;
  Real y = 0;

  /// <S_t'|S_t> / N.
  Complex<Real> overlap() const { return Complex<Real>(x, y) / Real(2); }
};

template <typename Real>
PairExpectations<Real> clock_pair_expectations(const HistoryState<Real>& h, Index t, Index tp) {
  const Index n = h.clock_dim();
  detail::require(t >= 0 && t < n && tp >= 0 && tp < n, Errc::out_of_range, "clock index out of range");
  detail::require(t != tp, Errc::invalid_argument, "pair observables need t != t'; use the projector");
  const ComplexMatrix<Real> a = h.amplitude_matrix();
  const Complex<Real> z = a.col(tp).dot(a.col(t));
  return {Real(2) * z.real(), Real(2) * z.imag()};
}

template <typename Real = double>
struct MeasurementRecord {
  PairObservable observable = PairObservable::X;
  Index t = 0;
  Index t_prime = 0;
  Real exact = 0;
  Real estimate = 0;
  Index shots = 0;
  Real std_error = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Born probabilities of the outcomes +1 and -1; the rest of the clock gives 0.
template <typename Real>
std::pair<Real, Real> pair_outcome_probabilities(const ComplexMatrix<Real>& a, PairObservable obs, Index t,
                                                 Index tp) {
  if (obs == PairObservable::Projector) return {a.col(t).squaredNorm(), Real(0)};
  const Complex<Real> i(0, 1);
  StateVector<Real> plus;
  StateVector<Real> minus;
  if (obs == PairObservable::X) {
    plus = a.col(tp) + a.col(t);
    minus = a.col(tp) - a.col(t);
  } else {
    plus = a.col(tp) - i * a.col(t);
    minus = a.col(tp) + i * a.col(t);
  }
  return {plus.squaredNorm() / Real(2), minus.squaredNorm() / Real(2)};
}

}  // namespace detail

/// Born-rule sampling of a clock pair observable. shots = 0 returns the exact
/// expectation with zero standard error.
template <typename Real>
MeasurementRecord<Real> shot_sample(const HistoryState<Real>& h, PairObservable obs, Index t, Index tp,
                                    Index shots, std::uint64_t seed) {
  const Index n = h.clock_dim();
  detail::require(shots >= 0, Errc::invalid_argument, "shots must be non-negative");
  detail::require(t >= 0 && t < n && tp >= 0 && tp < n, Errc::out_of_range, "clock index out of range");
  detail::require(obs == PairObservable::Projector || t != tp, Errc::invalid_argument,
                  "pair observables need t != t'");
  const ComplexMatrix<Real> a = h.amplitude_matrix();
  auto [p_plus, p_minus] = detail::pair_outcome_probabilities(a, obs, t, tp);
  p_plus = std::clamp(p_plus, Real(0), Real(1));
  p_minus = std::clamp(p_minus, Real(0), Real(1) - p_plus);

  MeasurementRecord<Real> rec;
  rec.observable = obs;
  rec.t = t;
  rec.t_prime = tp;
  rec.exact = p_plus - p_minus;
  rec.shots = shots;
  rec.seed = seed;
  if (shots == 0) {
    rec.estimate = rec.exact;
    return rec;
  }
  std::mt19937_64 rng(seed);
  const long long n_plus = std::binomial_distribution<long long>(shots, double(p_plus))(rng);
  const double rest = 1.0 - double(p_plus);
  const double cond = rest > 0 ? std::clamp(double(p_minus) / rest, 0.0, 1.0) : 0.0;
  const long long n_minus = std::binomial_distribution<long long>(shots - n_plus, cond)(rng);
  const Real m = Real(n_plus - n_minus) / Real(shots);
  rec.estimate = m;
  if (shots > 1) {
    // Outcomes in {+1, -1, 0}: second moment is the fraction of nonzero results.
    const Real second = Real(n_plus + n_minus) / Real(shots);
    const Real var = std::max(Real(0), (second - m * m) * Real(shots) / Real(shots - 1));
    rec.std_error = std::sqrt(var / Real(shots));
  }
  return rec;
}

/// rho_ST = (1 / (N d_S)) sum_{t,t'} U_t U_t'^dagger (x) |t><t'|.
template <typename Real>
ComplexMatrix<Real> mixed_system_clock_state(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  ComplexMatrix<Real> rho(d * n, d * n);
  const Real scale = Real(1) / Real(n * d);
  for (Index t = 0; t < n; ++t) {
    for (Index s = 0; s < n; ++s) {
      const ComplexMatrix<Real> block = us[static_cast<std::size_t>(t)] * us[static_cast<std::size_t>(s)].adjoint();
      for (Index q = 0; q < d; ++q) {
        for (Index p = 0; p < d; ++p) rho(q * n + t, p * n + s) = scale * block(q, p);
      }
    }
  }
  return rho;
}

/// Clock marginal rho_T(t, t') = Tr[U_t'^dagger U_t] / (N d_S).
template <typename Real>
ComplexMatrix<Real> clock_marginal(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  ComplexMatrix<Real> rho(n, n);
  for (Index t = 0; t < n; ++t) {
    for (Index s = 0; s < n; ++s) {
      rho(t, s) = (us[static_cast<std::size_t>(s)].adjoint() * us[static_cast<std::size_t>(t)]).trace() / Real(n * d);
    }
  }
  return rho;
}

template <typename Real = double>
struct OverlapEstimate {
  Complex<Real> value;      // estimate of Tr[U_t'^dagger U_t] / (N d_S)
  Complex<Real> exact;
  Real std_error_re = 0;
  Real std_error_im = 0;
  Index shots = 0;
};

/// Recovers Tr[U_t'^dagger U_t] / (N d_S) from clock pair measurements with
/// the system prepared maximally mixed. Sampling acts on the purification,
/// the operator history state.
template <typename Real>
OverlapEstimate<Real> operator_overlap_protocol(const EvolutionSpec<Real>& spec, Index t, Index tp, Index shots,
                                                std::uint64_t seed, double tol = 1e-10) {
  const Index n = clock_dim(spec);
  detail::require(t >= 0 && t < n && tp >= 0 && tp < n, Errc::out_of_range, "clock index out of range");
  detail::require(shots >= 0, Errc::invalid_argument, "shots must be non-negative");
  OverlapEstimate<Real> est;
  est.shots = shots;
  est.exact = clock_marginal(spec, tol)(t, tp);
  const HistoryState<Real> purified = operator_history_state(spec, tol);
  if (t == tp) {
    const auto r = shot_sample(purified, PairObservable::Projector, t, t, shots, derive_seed(seed, 0));
    est.value = Complex<Real>(r.estimate, 0);
    est.std_error_re = r.std_error;
    return est;
  }
  const auto rx = shot_sample(purified, PairObservable::X, t, tp, shots, derive_seed(seed, 0));
  const auto ry = shot_sample(purified, PairObservable::Y, t, tp, shots, derive_seed(seed, 1));
  est.value = Complex<Real>(rx.estimate, ry.estimate) / Real(2);
  est.std_error_re = rx.std_error / Real(2);
  est.std_error_im = ry.std_error / Real(2);
  return est;
}

template <typename Real = double>
struct Dqc1Result {
  Complex<Real> trace_estimate;   // estimate of Tr U / d_S
  Complex<Real> trace_exact;
  Real std_error_re = 0;
  Real std_error_im = 0;
  Real e2_w = 0;                  // 1 - |Tr U|^2 / d_S^2
  Real entangling_power = 0;      // sqrt(e2_w)
};

/// The two-step clock spec {1, U}, closed by U^dagger.
template <typename Real>
EvolutionSpec<Real> dqc1_spec(const ComplexMatrix<Real>& u) {
  return StepSequence<Real>{{u, u.adjoint()}};
}

/// One-clean-qubit trace estimation with a two-level clock.
template <typename Real>
Dqc1Result<Real> dqc1(const ComplexMatrix<Real>& u, Index shots, std::uint64_t seed, double tol = 1e-10) {
  detail::require(u.rows() == u.cols() && u.rows() >= 1, Errc::invalid_shape, "operator must be square");
  detail::require(is_unitary(u, tol), Errc::contract_violation, "operator is not unitary");
  const Real d = Real(u.rows());
  const auto est = operator_overlap_protocol(dqc1_spec(u), 1, 0, shots, seed, tol);
  Dqc1Result<Real> r;
  r.trace_estimate = Real(2) * est.value;
  r.trace_exact = u.trace() / d;
  r.std_error_re = Real(2) * est.std_error_re;
  r.std_error_im = Real(2) * est.std_error_im;
  r.e2_w = std::max(Real(0), Real(1) - std::norm(u.trace()) / (d * d));
  r.entangling_power = std::sqrt(r.e2_w);
  return r;
}

}  // namespace histclock

#endif  // HISTCLOCK_MEASUREMENT_HPP
