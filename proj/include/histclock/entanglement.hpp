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

#ifndef HISTCLOCK_ENTANGLEMENT_HPP
#define HISTCLOCK_ENTANGLEMENT_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "histclock/history.hpp"
#include "histclock/linalg.hpp"

namespace histclock {

//----------------------------------------------------------------------------
// Entropies of history states
//----------------------------------------------------------------------------

/// Shannon entropy in bits; zero probabilities contribute nothing.
template <typename Derived>
auto entropy_bits(const Eigen::MatrixBase<Derived>& probabilities) {
  using Real = typename Derived::Scalar;
  Real s = 0;
  for (Index k = 0; k < probabilities.size(); ++k) {
    const Real p = probabilities(k);
    if (p > 0) s -= p * std::log2(p);
  }
  return s;
}

template <typename Real>
Real vn_entropy(const SchmidtDecomposition<Real>& s, double tol = 1e-10) {
  const RealVector<Real> p = s.values.cwiseAbs2();
  detail::require(std::abs(p.sum() - Real(1)) <= tol, Errc::contract_violation,
                  "Schmidt coefficients are not normalized");
  return entropy_bits(p);
}

/// Time-uncertainty entropy of the conjugate weights |Lambda_xi|^2.
template <typename Real>
Real conjugate_entropy(const ConjugateReport<Real>& c) {
  return entropy_bits(c.weights);
}

template <typename Real>
Real e2_from_schmidt(const SchmidtDecomposition<Real>& s) {
  return Real(2) * (Real(1) - s.values.array().pow(4).sum());
}

/// 2 (1 - (1/N^2) sum_{t,t'} |<S_t|S_t'>|^2), from the overlaps alone.
template <typename Real>
Real e2_from_overlaps(const HistoryState<Real>& h) {
  const ComplexMatrix<Real> a = h.amplitude_matrix();
  // (A^dagger A)(t, t') = <S_t|S_t'> / N.
  const ComplexMatrix<Real> g = a.adjoint() * a;
  return Real(2) * (Real(1) - g.cwiseAbs2().sum());
}

//----------------------------------------------------------------------------
// Spectral weights of a constant-Hamiltonian evolution
//----------------------------------------------------------------------------

/// Distinct energies E_k with probabilities |c_k|^2. Degenerate levels are
/// merged with summed weights.
template <typename Real = double>
class SpectralWeights {
 public:
  SpectralWeights() = default;

  static SpectralWeights make(std::vector<Real> energies, std::vector<Real> weights,
                              double degeneracy_tol = 1e-12, double sum_tol = 1e-12) {
    detail::require(!energies.empty() && energies.size() == weights.size(), Errc::invalid_shape,
                    "energies and weights must be non-empty and of equal length");
    Real total = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      detail::require(std::isfinite(double(energies[k])) && std::isfinite(double(weights[k])),
                      Errc::invalid_argument, "energies and weights must be finite");
      detail::require(weights[k] >= 0, Errc::contract_violation, "weights must be non-negative");
      total += weights[k];
    }
    detail::require(std::abs(total - Real(1)) <= sum_tol, Errc::contract_violation,
                    "weights must sum to one");

    std::vector<std::size_t> order(energies.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    SpectralWeights w;
    for (std::size_t idx : order) {
      if (!w.energies_.empty() && std::abs(energies[idx] - w.energies_.back()) < degeneracy_tol) {
        w.weights_.back() += weights[idx];
      } else {
        w.energies_.push_back(energies[idx]);
        w.weights_.push_back(weights[idx]);
      }
    }
    return w;
  }

  /// Energy distribution of `seed` under the Hermitian `h`.
  static SpectralWeights from_state(const ComplexMatrix<Real>& h, const StateVector<Real>& seed,
                                    double degeneracy_tol = 1e-12) {
    detail::require(is_hermitian(h), Errc::contract_violation, "Hamiltonian is not Hermitian");
    detail::require(seed.size() == h.rows(), Errc::invalid_shape, "seed does not match the Hamiltonian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es((h + h.adjoint()) / Real(2));
    const StateVector<Real> c = es.eigenvectors().adjoint() * seed;
    std::vector<Real> e(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
    std::vector<Real> p(static_cast<std::size_t>(h.rows()));
    for (Index k = 0; k < h.rows(); ++k) p[static_cast<std::size_t>(k)] = std::norm(c(k));
    return make(std::move(e), std::move(p), degeneracy_tol, 1e-10);
  }

  const std::vector<Real>& energies() const { return energies_; }
  const std::vector<Real>& weights() const { return weights_; }
  std::size_t size() const { return energies_.size(); }

  Real mean() const {
    Real m = 0;
    for (std::size_t k = 0; k < size(); ++k) m += weights_[k] * energies_[k];
    return m;
  }

  /// <(H - <H>)^p>.
  Real central_moment(int p) const {
    const Real m = mean();
    Real acc = 0;
    for (std::size_t k = 0; k < size(); ++k) acc += weights_[k] * std::pow(energies_[k] - m, p);
    return acc;
  }

  Real variance() const { return central_moment(2); }

 private:
  std::vector<Real> energies_;
  std::vector<Real> weights_;
};

namespace detail {

// sin^2(N x) / (N^2 sin^2 x), continuous through the removable poles x = m pi.
template <typename Real>
Real dirichlet_ratio_sq(Real x, Index n) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real y = x - pi * std::round(x / pi);
  const Real nn = Real(n);
  if (std::abs(y) < Real(1e-8)) return Real(1) - (nn * nn - Real(1)) * y * y / Real(3);
  const Real r = std::sin(nn * y) / (nn * std::sin(y));
  return r * r;
}

// 1 - dirichlet_ratio_sq(x, n). Near the poles the closed form cancels, so it
// is summed there as (4 / N^2) sum_{m=1}^{N-1} (N - m) sin^2(m y).
template <typename Real>
Real dirichlet_complement(Real x, Index n) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real y = x - pi * std::round(x / pi);
  const Real nn = Real(n);
  if (nn * std::abs(y) >= Real(1)) return Real(1) - dirichlet_ratio_sq(x, n);
  Real acc = 0;
  for (Index m = 1; m < n; ++m) {
    const Real s = std::sin(Real(m) * y);
    acc += Real(n - m) * s * s;
  }
  return Real(4) * acc / (nn * nn);
}

template <typename Real>
Real sinc_sq(Real x) {
  if (std::abs(x) < Real(1e-8)) return Real(1) - x * x / Real(3);
  const Real r = std::sin(x) / x;
  return r * r;
}

// 1 - sinc_sq(x) = (x - sin x)(x + sin x) / x^2, with x - sin x from its
// series for small x.
template <typename Real>
Real sinc_complement(Real x) {
  const Real ax = std::abs(x);
  if (ax >= Real(0.5)) return Real(1) - sinc_sq(x);
  if (ax == Real(0)) return Real(0);
  const Real x2 = ax * ax;
  Real term = ax * x2 / Real(6);
  Real diff = 0;
  for (int k = 1; k <= 7; ++k) {
    diff += term;
    term *= -x2 / Real((2 * k + 2) * (2 * k + 3));
  }
  return diff * (ax + std::sin(ax)) / x2;
}

// 1 - |<S_0|S_tf>|^2 = 2 sum_{k != k'} p_k p_k' sin^2((E_k - E_k') tf / 2),
// evaluated without cancellation.
template <typename Real>
Real infidelity(const SpectralWeights<Real>& w, Real tf) {
  Real acc = 0;
  const auto& e = w.energies();
  const auto& p = w.weights();
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t l = k + 1; l < w.size(); ++l) {
      const Real s = std::sin((e[k] - e[l]) * tf / Real(2));
      acc += Real(4) * p[k] * p[l] * s * s;
    }
  }
  return acc;
}

}  // namespace detail

/// Closed-form quadratic entropy of a constant-Hamiltonian history over N
/// equally spaced times on [0, t_f].
template <typename Real>
Real e2_constant_analytic(const SpectralWeights<Real>& w, Real tf, Index n) {
  detail::require(n >= 2, Errc::invalid_dimension, "e2_constant_analytic needs N >= 2");
  const auto& e = w.energies();
  const auto& p = w.weights();
  Real acc = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t l = k + 1; l < w.size(); ++l) {
      const Real x = (e[k] - e[l]) * tf / (Real(2) * Real(n - 1));
      acc += p[k] * p[l] * detail::dirichlet_complement(x, n);
    }
  }
  // Unordered pairs counted once, hence 2 * 2.
  return Real(4) * acc;
}

/// N -> infinity limit of e2_constant_analytic.
template <typename Real>
Real e2_continuum(const SpectralWeights<Real>& w, Real tf) {
  const auto& e = w.energies();
  const auto& p = w.weights();
  Real acc = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t l = k + 1; l < w.size(); ++l) {
      acc += p[k] * p[l] * detail::sinc_complement((e[k] - e[l]) * tf / Real(2));
    }
  }
  return Real(4) * acc;
}

/// Second-order short-time form ((N+1) / (3 (N-1))) Var(H) t_f^2.
template <typename Real>
Real e2_small_t(const SpectralWeights<Real>& w, Real tf, Index n) {
  detail::require(n >= 2, Errc::invalid_dimension, "e2_small_t needs N >= 2");
  return Real(n + 1) / (Real(3) * Real(n - 1)) * w.variance() * tf * tf;
}

/// Quadratic entropy of the energy distribution, 2 (1 - sum_k |c_k|^4).
template <typename Real>
Real e2_upper_bound(const SpectralWeights<Real>& w) {
  Real s = 0;
  for (Real p : w.weights()) s += p * p;
  return Real(2) * (Real(1) - s);
}

//----------------------------------------------------------------------------
// Lower bound, geodesics and the curvature gap
//----------------------------------------------------------------------------

/// Angle phi in [0, pi/2] with cos(phi) = |<a|b>|. Computed as
/// atan2(|b_perp|, |<a|b>|), which stays accurate near both ends.
template <typename Real>
Real overlap_angle(const StateVector<Real>& a, const StateVector<Real>& b) {
  detail::require(a.size() == b.size(), Errc::invalid_shape, "states have different dimensions");
  const Complex<Real> ov = a.dot(b);
  const Real c = std::min(std::abs(ov), Real(1));
  const Real s = (b - ov * a).norm();
  return std::atan2(s, c);
}

/// Angle between |S_0> and |S_tf> for a constant-Hamiltonian evolution.
template <typename Real>
Real spectral_overlap_angle(const SpectralWeights<Real>& w, Real tf) {
  Complex<Real> ov(0);
  for (std::size_t k = 0; k < w.size(); ++k) ov += w.weights()[k] * std::polar(Real(1), -w.energies()[k] * tf);
  const Real s2 = std::clamp(detail::infidelity(w, tf), Real(0), Real(1));
  return std::atan2(std::sqrt(s2), std::min(std::abs(ov), Real(1)));
}

/// Quadratic entropy of the geodesic evolution with Wootters half-angle phi.
template <typename Real>
Real e2_lower_bound(Real phi, Index n) {
  detail::require(n >= 2, Errc::invalid_dimension, "e2_lower_bound needs N >= 2");
  const Real half_pi = std::numbers::pi_v<Real> / Real(2);
  detail::require(phi >= Real(-1e-12) && phi <= half_pi + Real(1e-12), Errc::out_of_range,
                  "phi must lie in [0, pi/2]");
  phi = std::clamp(phi, Real(0), half_pi);
  return detail::dirichlet_complement(phi / Real(n - 1), n);
}

/// N -> infinity limit 1 - sin^2(phi) / phi^2.
template <typename Real>
Real e2_lower_bound_continuum(Real phi) {
  const Real half_pi = std::numbers::pi_v<Real> / Real(2);
  detail::require(phi >= Real(-1e-12) && phi <= half_pi + Real(1e-12), Errc::out_of_range,
                  "phi must lie in [0, pi/2]");
  return detail::sinc_complement(std::clamp(phi, Real(0), half_pi));
}

template <typename Real = double>
struct GeodesicSpec {
  Real phi = 0;
  Real gamma = 0;
  StateVector<Real> initial;
  StateVector<Real> orthogonal;  // empty when phi = 0
  Real final_time = 1;
};

template <typename Real = double>
struct GeodesicEvolution {
  ComplexMatrix<Real> hamiltonian;
  GeodesicSpec<Real> spec;
};

/// Two-level Hamiltonian (phi / t_f) sigma_y + gamma / t_f moving |S_0> to
/// |S_tf> along the Fubini-Study geodesic.
template <typename Real>
GeodesicEvolution<Real> geodesic_hamiltonian(const StateVector<Real>& s0, const StateVector<Real>& stf, Real tf,
                                             double tol = 1e-10) {
  detail::require(s0.size() == stf.size() && s0.size() >= 1, Errc::invalid_shape,
                  "endpoint states must share a dimension");
  detail::require(std::abs(s0.norm() - Real(1)) <= tol && std::abs(stf.norm() - Real(1)) <= tol,
                  Errc::contract_violation, "endpoint states must be normalized");
  detail::require(tf > 0, Errc::invalid_argument, "final time must be positive");
  const Index d = s0.size();
  const Complex<Real> ov = s0.dot(stf);
  Real gamma = -std::arg(ov);
  if (gamma < 0) gamma += two_pi<Real>;
  if (gamma >= two_pi<Real>) gamma -= two_pi<Real>;

  GeodesicEvolution<Real> g;
  g.spec.phi = overlap_angle(s0, stf);
  g.spec.gamma = gamma;
  g.spec.initial = s0;
  g.spec.final_time = tf;
  g.hamiltonian = (gamma / tf) * ComplexMatrix<Real>::Identity(d, d);
  // Pure phase when the endpoints coincide up to phase.
  if (std::sin(g.spec.phi) < Real(1e-10)) {
    g.spec.phi = 0;
    return g;
  }
  const StateVector<Real> perp =
      (std::polar(Real(1), gamma) * stf - std::cos(g.spec.phi) * s0) / std::sin(g.spec.phi);
  g.spec.orthogonal = perp / perp.norm();
  const Complex<Real> minus_i(0, -1);
  const ComplexMatrix<Real> sigma_y =
      minus_i * (s0 * g.spec.orthogonal.adjoint() - g.spec.orthogonal * s0.adjoint());
  g.hamiltonian += (g.spec.phi / tf) * sigma_y;
  return g;
}

template <typename Real = double>
struct CurvatureGap {
  Real gap = 0;
  Real kappa = 0;
  Real predicted = 0;
};

/// kappa(N) = (N + 1)(N - 2)(N - 4/3) / (60 (N - 1)^3).
template <typename Real = double>
Real curvature_kappa(Index n) {
  const Real nn = Real(n);
  return (nn + 1) * (nn - 2) * (nn - Real(4) / Real(3)) / (Real(60) * std::pow(nn - 1, 3));
}

/// Excess of the exact quadratic entropy over the geodesic lower bound, with
/// its fourth-order short-time prediction.
template <typename Real>
CurvatureGap<Real> curvature_gap(const SpectralWeights<Real>& w, Real tf, Index n) {
  detail::require(n > 2, Errc::invalid_dimension, "curvature_gap needs N > 2");
  CurvatureGap<Real> c;
  const Real phi = spectral_overlap_angle(w, tf);
  c.gap = e2_constant_analytic(w, tf, n) - e2_lower_bound(phi, n);
  c.kappa = curvature_kappa<Real>(n);
  const Real m2 = w.central_moment(2);
  c.predicted = c.kappa * (w.central_moment(4) - m2 * m2) * std::pow(tf, 4);
  return c;
}

//----------------------------------------------------------------------------
// Appendix-style checks
//----------------------------------------------------------------------------

/// sin^2(g N / (N-1)) / (N^2 sin^2(g / (N-1))) <= same at g - j pi, with j
/// chosen so |g - j pi| <= pi / 2.
template <typename Real>
bool translation_inequality_holds(Real gamma, Index n, Real slack = Real(1e-12)) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real j = std::round(gamma / pi);
  const Real lhs = detail::dirichlet_ratio_sq(gamma / Real(n - 1), n);
  const Real rhs = detail::dirichlet_ratio_sq((gamma - j * pi) / Real(n - 1), n);
  return lhs <= rhs + slack;
}

template <typename Real = double>
struct AppendixReport {
  std::vector<Real> f_values;  // F(s) on s = 0, 1/grid, ..., 1
  Real min_f = 0;
  bool short_time = false;     // |dE t_f / 2| <= pi for all weighted pairs
  bool f_ok = true;            // endpoint and positivity checks (short time only)
  bool translation_ok = true;
};

/// Evaluates F(s) = arcsin(sqrt(2 sum p p' sin^2(dE t_f s / 2))) - phi s on a
/// grid and checks the energy-translation inequality for every pair.
template <typename Real>
AppendixReport<Real> appendix_check(const SpectralWeights<Real>& w, Real tf, Index grid, Index n,
                                    double tol = 1e-10) {
  detail::require(grid >= 3, Errc::invalid_argument, "appendix_check needs grid >= 3");
  detail::require(n >= 2, Errc::invalid_dimension, "appendix_check needs N >= 2");
  const Real pi = std::numbers::pi_v<Real>;
  const auto& e = w.energies();
  const auto& p = w.weights();

  AppendixReport<Real> rep;
  rep.short_time = true;
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t l = k + 1; l < w.size(); ++l) {
      if (p[k] * p[l] <= 0) continue;
      const Real g = (e[k] - e[l]) * tf / Real(2);
      if (std::abs(g) > pi) rep.short_time = false;
      if (!translation_inequality_holds(std::abs(g), n)) rep.translation_ok = false;
    }
  }

  auto angle = [&](Real s) {
    return std::asin(std::sqrt(std::clamp(detail::infidelity(w, tf * s), Real(0), Real(1))));
  };
  const Real phi = angle(Real(1));
  rep.f_values.reserve(static_cast<std::size_t>(grid + 1));
  for (Index i = 0; i <= grid; ++i) {
    const Real s = Real(i) / Real(grid);
    rep.f_values.push_back(angle(s) - phi * s);
  }
  rep.min_f = *std::min_element(rep.f_values.begin(), rep.f_values.end());
  if (rep.short_time) {
    rep.f_ok = std::abs(rep.f_values.front()) <= tol && std::abs(rep.f_values.back()) <= tol &&
               rep.min_f >= -tol;
  }
  return rep;
}

}  // namespace histclock

#endif  // HISTCLOCK_ENTANGLEMENT_HPP
