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

#ifndef HISTCLOCK_HISTORY_HPP
#define HISTCLOCK_HISTORY_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "histclock/linalg.hpp"
#include "histclock/weyl.hpp"

namespace histclock {

//----------------------------------------------------------------------------
// Evolution specifications
//----------------------------------------------------------------------------

/// U_t = exp(-i H t_j). With a final time the grid is t_j = t_f j / (N - 1);
/// without one it is the dimensionless grid t_j = j.
template <typename Real = double>
struct ConstantHamiltonian {
  ComplexMatrix<Real> hamiltonian;
  Index steps = 1;
  std::optional<Real> final_time;

  static ConstantHamiltonian from_spectrum(const RealVector<Real>& energies,
                                           const ComplexMatrix<Real>& eigenvectors, Index steps,
                                           std::optional<Real> final_time = std::nullopt) {
    detail::require(eigenvectors.rows() == energies.size() && eigenvectors.cols() == energies.size(),
                    Errc::invalid_shape, "eigenvector matrix must be square and match the spectrum");
    detail::require(is_unitary(eigenvectors), Errc::contract_violation,
                    "eigenvector matrix is not unitary");
    ComplexMatrix<Real> h =
        eigenvectors * energies.template cast<Complex<Real>>().asDiagonal() * eigenvectors.adjoint();
    return {(h + h.adjoint()) / Real(2), steps, final_time};
  }

  static ConstantHamiltonian diagonal(const RealVector<Real>& energies, Index steps,
                                      std::optional<Real> final_time = std::nullopt) {
    return {energies.template cast<Complex<Real>>().asDiagonal(), steps, final_time};
  }

  Real time_step() const {
    if (final_time && steps > 1) return *final_time / Real(steps - 1);
    return Real(1);
  }
};

/// Arbitrary step unitaries U_{t,t-1}, t = 1..N. Entry N-1 is the cyclic
/// step U_{0,N-1}.
template <typename Real = double>
struct StepSequence {
  std::vector<ComplexMatrix<Real>> steps;
};

/// Complete orthogonal Weyl set on a d-dimensional system, N = d^2.
struct WeylEvolution {
  Index dim = 2;
};

template <typename Real = double>
using EvolutionSpec = std::variant<ConstantHamiltonian<Real>, StepSequence<Real>, WeylEvolution>;

template <typename Real>
Index system_dim(const EvolutionSpec<Real>& spec) {
  return std::visit(
      [](const auto& s) -> Index {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantHamiltonian<Real>>) {
          return s.hamiltonian.rows();
        } else if constexpr (std::is_same_v<S, StepSequence<Real>>) {
          return s.steps.empty() ? 0 : s.steps.front().rows();
        } else {
          return s.dim;
        }
      },
      spec);
}

template <typename Real>
Index clock_dim(const EvolutionSpec<Real>& spec) {
  return std::visit(
      [](const auto& s) -> Index {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantHamiltonian<Real>>) {
          return s.steps;
        } else if constexpr (std::is_same_v<S, StepSequence<Real>>) {
          return static_cast<Index>(s.steps.size());
        } else {
          return s.dim * s.dim;
        }
      },
      spec);
}

/// Throws unless the spec describes a unitary evolution with consistent shapes.
template <typename Real>
void validate(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  std::visit(
      [tol](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantHamiltonian<Real>>) {
          detail::require(s.steps >= 1, Errc::invalid_dimension, "constant Hamiltonian needs N >= 1");
          detail::require(s.hamiltonian.rows() >= 1 && s.hamiltonian.rows() == s.hamiltonian.cols(),
                          Errc::invalid_shape, "Hamiltonian must be square and non-empty");
          detail::require(is_hermitian(s.hamiltonian, tol), Errc::contract_violation,
                          "Hamiltonian is not Hermitian");
          if (s.final_time) {
            detail::require(std::isfinite(double(*s.final_time)), Errc::invalid_argument,
                            "final time must be finite");
          }
        } else if constexpr (std::is_same_v<S, StepSequence<Real>>) {
          detail::require(!s.steps.empty(), Errc::invalid_dimension, "step sequence is empty");
          const Index d = s.steps.front().rows();
          for (std::size_t t = 0; t < s.steps.size(); ++t) {
            const auto& u = s.steps[t];
            detail::require(u.rows() == d && u.cols() == d && d >= 1, Errc::invalid_shape,
                            "step " + std::to_string(t + 1) + " has the wrong shape");
            detail::require(is_unitary(u, tol), Errc::contract_violation,
                            "step " + std::to_string(t + 1) + " is not unitary");
          }
        } else {
          detail::require(s.dim >= 2, Errc::invalid_dimension, "Weyl evolution needs d >= 2");
        }
      },
      spec);
}

/// The N step unitaries U_{t,t-1}, t = 1..N (the last one closes the cycle).
template <typename Real>
std::vector<ComplexMatrix<Real>> step_unitaries(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  validate(spec, tol);
  return std::visit(
      [tol](const auto& s) -> std::vector<ComplexMatrix<Real>> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantHamiltonian<Real>>) {
          const ComplexMatrix<Real> step = hermitian_expm(s.hamiltonian, s.time_step(), tol);
          return std::vector<ComplexMatrix<Real>>(static_cast<std::size_t>(s.steps), step);
        } else if constexpr (std::is_same_v<S, StepSequence<Real>>) {
          return s.steps;
        } else {
          return weyl_step_list<Real>(s.dim);
        }
      },
      spec);
}

/// U_0 = 1, U_t = U_{t,t-1} U_{t-1}. The constant case evaluates exp(-i H t_j)
/// directly rather than multiplying steps.
template <typename Real>
std::vector<ComplexMatrix<Real>> cumulative_unitaries(const EvolutionSpec<Real>& spec,
                                                      double tol = 1e-10) {
  validate(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  std::vector<ComplexMatrix<Real>> out;
  out.reserve(static_cast<std::size_t>(n));
  if (const auto* c = std::get_if<ConstantHamiltonian<Real>>(&spec)) {
    for (Index j = 0; j < n; ++j) out.push_back(hermitian_expm(c->hamiltonian, c->time_step() * Real(j), tol));
    out.front() = ComplexMatrix<Real>::Identity(d, d);
    return out;
  }
  if (const auto* w = std::get_if<WeylEvolution>(&spec)) return weyl_set<Real>(w->dim);
  const auto steps = step_unitaries(spec, tol);
  out.push_back(ComplexMatrix<Real>::Identity(d, d));
  for (Index t = 1; t < n; ++t) out.push_back(steps[static_cast<std::size_t>(t - 1)] * out.back());
  return out;
}

//----------------------------------------------------------------------------
// History states
//----------------------------------------------------------------------------

/// Joint system-clock pure state (1/sqrt(N)) sum_t |S_t>|t>, stored with the
/// composite index q * N + t.
template <typename Real = double>
class HistoryState {
 public:
  HistoryState() = default;

  HistoryState(Index system_dim, Index clock_dim, StateVector<Real> amplitudes)
      : d_(system_dim), n_(clock_dim), amplitudes_(std::move(amplitudes)) {
    detail::require(d_ >= 1 && n_ >= 1, Errc::invalid_dimension, "history state dimensions must be positive");
    detail::require(amplitudes_.size() == d_ * n_, Errc::invalid_shape,
                    "amplitude vector does not match system x clock dimensions");
  }

  /// Build from the (unnormalized-by-N) system states S_t, one per column.
  static HistoryState from_system_states(const ComplexMatrix<Real>& states) {
    const Index d = states.rows();
    const Index n = states.cols();
    StateVector<Real> amp(d * n);
    const Real scale = Real(1) / std::sqrt(Real(n));
    for (Index q = 0; q < d; ++q) {
      for (Index t = 0; t < n; ++t) amp(q * n + t) = scale * states(q, t);
    }
    return HistoryState(d, n, std::move(amp));
  }

  Index system_dim() const { return d_; }
  Index clock_dim() const { return n_; }
  const StateVector<Real>& amplitudes() const { return amplitudes_; }

  /// Amplitude matrix <q t|Psi> = psi(q, t) / sqrt(N), rows q, columns t.
  ComplexMatrix<Real> amplitude_matrix() const { return detail::reshape_bipartite(amplitudes_, d_, n_); }

  /// Wave function psi(q, t) = <q|S_t>.
  Complex<Real> wave_function(Index q, Index t) const {
    return std::sqrt(Real(n_)) * amplitudes_(q * n_ + t);
  }

  /// |S_t> = sqrt(N) <t|Psi>.
  StateVector<Real> system_state(Index t) const {
    detail::require(t >= 0 && t < n_, Errc::out_of_range, "clock index out of range");
    StateVector<Real> s(d_);
    for (Index q = 0; q < d_; ++q) s(q) = amplitudes_(q * n_ + t);
    return std::sqrt(Real(n_)) * s;
  }

  /// All |S_t> as columns.
  ComplexMatrix<Real> system_states() const { return std::sqrt(Real(n_)) * amplitude_matrix(); }

  Real norm() const { return amplitudes_.norm(); }

  SchmidtDecomposition<Real> schmidt() const { return schmidt_split(amplitudes_, d_, n_); }

 private:
  Index d_ = 0;
  Index n_ = 0;
  StateVector<Real> amplitudes_;
};

/// (1/sqrt(N)) sum_t (U_t seed) (x) |t>.
template <typename Real>
HistoryState<Real> build_history_state(const StateVector<Real>& seed, const EvolutionSpec<Real>& spec,
                                       double tol = 1e-10) {
  const auto unitaries = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  detail::require(seed.size() == d, Errc::invalid_shape,
                  "seed has dimension " + std::to_string(seed.size()) + ", system has " + std::to_string(d));
  detail::require(std::abs(seed.norm() - Real(1)) <= tol, Errc::contract_violation, "seed state is not normalized");
  ComplexMatrix<Real> states(d, static_cast<Index>(unitaries.size()));
  for (std::size_t t = 0; t < unitaries.size(); ++t) states.col(static_cast<Index>(t)) = unitaries[t] * seed;
  return HistoryState<Real>::from_system_states(states);
}

/// Cyclic clock translation exp(-i P_T) = sum_t |t><t-1|.
template <typename Real = double>
ComplexMatrix<Real> clock_shift(Index n) {
  detail::require(n >= 1, Errc::invalid_dimension, "clock needs N >= 1");
  ComplexMatrix<Real> s = ComplexMatrix<Real>::Zero(n, n);
  for (Index t = 0; t < n; ++t) s((t + 1) % n, t) = Real(1);
  return s;
}

/// Global step operator sum_t U_{t,t-1} (x) |t><t-1| with cyclic wraparound.
template <typename Real>
ComplexMatrix<Real> global_unitary(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto steps = step_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  ComplexMatrix<Real> u = ComplexMatrix<Real>::Zero(d * n, d * n);
  for (Index t = 1; t <= n; ++t) {
    const Index to = t % n;
    const Index from = t - 1;
    const auto& step = steps[static_cast<std::size_t>(t - 1)];
    for (Index q = 0; q < d; ++q) {
      for (Index p = 0; p < d; ++p) u(q * n + to, p * n + from) += step(q, p);
    }
  }
  return u;
}

template <typename Real = double>
struct EigenResidual {
  Real residual = 0;
  Index sector = 0;    // k in exp(-i 2 pi k / N)
  Real eigenphase = 0; // 2 pi k / N
};

/// Distance of |Psi> from the nearest eigenspace of the global step operator.
template <typename Real>
EigenResidual<Real> eigen_residual(const EvolutionSpec<Real>& spec, const HistoryState<Real>& h,
                                   double tol = 1e-10) {
  const Index n = clock_dim(spec);
  detail::require(h.system_dim() == system_dim(spec) && h.clock_dim() == n, Errc::invalid_shape,
                  "history state does not match the evolution spec");
  const StateVector<Real> image = global_unitary(spec, tol) * h.amplitudes();
  EigenResidual<Real> best;
  best.residual = std::numeric_limits<Real>::infinity();
  for (Index k = 0; k < n; ++k) {
    const Real phase = two_pi<Real> * Real(k) / Real(n);
    const Real r = (image - std::polar(Real(1), -phase) * h.amplitudes()).norm();
    if (r < best.residual) best = {r, k, phase};
  }
  return best;
}

/// Hermitian generator J with exp(-iJ) equal to the global step operator,
/// spectrum in [0, 2 pi).
template <typename Real>
ComplexMatrix<Real> wheeler_dewitt_generator(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  return unitary_generator(global_unitary(spec, tol), tol);
}

/// Clock momentum P_T = F diag(2 pi k / N) F^dagger.
template <typename Real = double>
ComplexMatrix<Real> clock_momentum(Index n) {
  const ComplexMatrix<Real> f = dft_matrix<Real>(n);
  StateVector<Real> spectrum(n);
  for (Index k = 0; k < n; ++k) spectrum(k) = two_pi<Real> * Real(k) / Real(n);
  return f * spectrum.asDiagonal() * f.adjoint();
}

namespace detail {

// Clock momentum whose branch on each Fourier mode |k> is -E for the system
// energy E = -2 pi k / N (mod 2 pi) that pairs with it, falling back to
// 2 pi k / N for unpaired modes.
template <typename Real>
ComplexMatrix<Real> aligned_clock_momentum(Index n, const RealVector<Real>& energies, Real tol) {
  const ComplexMatrix<Real> f = dft_matrix<Real>(n);
  StateVector<Real> spectrum(n);
  for (Index k = 0; k < n; ++k) {
    Real value = two_pi<Real> * Real(k) / Real(n);
    for (Index j = 0; j < energies.size(); ++j) {
      const Real target = -two_pi<Real> * Real(k) / Real(n);
      const Real diff = std::remainder(energies(j) - target, two_pi<Real>);
      if (std::abs(diff) <= tol) {
        value = -energies(j);
        break;
      }
    }
    spectrum(k) = value;
  }
  return f * spectrum.asDiagonal() * f.adjoint();
}

}  // namespace detail

/// max_t || -sqrt(N) <t|P_T|Psi> - H_S |S_t> ||. The momentum branch is aligned
/// with the spectrum of H_S, so any spectrum on the 2 pi k / N grid satisfies
/// the equation exactly; off-grid spectra give an O(1) residual.
template <typename Real>
Real discrete_schrodinger_residual(const HistoryState<Real>& h, const ComplexMatrix<Real>& hs,
                                   double tol = 1e-8) {
  detail::require(hs.rows() == h.system_dim() && hs.cols() == h.system_dim(), Errc::invalid_shape,
                  "Hamiltonian does not match the system dimension");
  detail::require(is_hermitian(hs, 1e-10), Errc::contract_violation, "Hamiltonian is not Hermitian");
  const Index n = h.clock_dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es((hs + hs.adjoint()) / Real(2));
  const ComplexMatrix<Real> p = detail::aligned_clock_momentum<Real>(n, es.eigenvalues(), Real(tol));
  const ComplexMatrix<Real> a = h.amplitude_matrix();
  // <t|P_T|Psi> as system vectors, one column per t.
  const ComplexMatrix<Real> lhs = -std::sqrt(Real(n)) * (a * p.transpose());
  const ComplexMatrix<Real> rhs = hs * h.system_states();
  Real worst = 0;
  for (Index t = 0; t < n; ++t) worst = std::max(worst, (lhs.col(t) - rhs.col(t)).norm());
  return worst;
}

//----------------------------------------------------------------------------
// Special clock basis and conjugate representation
//----------------------------------------------------------------------------

template <typename Real = double>
struct SpecialBasisReport {
  ComplexMatrix<Real> tau_basis;         // N x N, column tau = |tau> in the |t> basis
  ComplexMatrix<Real> effective_hamiltonian;
  StateVector<Real> seed;                // |S_{tau=0}>
  std::vector<Index> k_assignment;       // Schmidt pair j -> integer k
  RealVector<Real> schmidt_values;
  ComplexMatrix<Real> system_vectors;    // d_S x rank
  ComplexMatrix<Real> clock_vectors;     // N x N, completed; column j = |-k_j>_T

  /// (1/sqrt(N)) sum_tau (exp(-i tau H_eff) |S_{tau=0}>) (x) |tau>.
  StateVector<Real> reconstruct() const {
    const Index n = tau_basis.rows();
    const Index d = seed.size();
    StateVector<Real> v = StateVector<Real>::Zero(d * n);
    for (Index tau = 0; tau < n; ++tau) {
      v += kron(evolved_seed(tau), tau_basis.col(tau));
    }
    return v / std::sqrt(Real(n));
  }

  StateVector<Real> evolved_seed(Index tau) const {
    return hermitian_expm(effective_hamiltonian, Real(tau)) * seed;
  }
};

/// Clock basis in which the history evolves under a constant Hamiltonian with
/// spectrum on the 2 pi k / N grid. Schmidt pairs sorted by descending weight
/// take k = 0, 1, 2, ...
template <typename Real>
SpecialBasisReport<Real> special_clock_basis(const HistoryState<Real>& h, Real rank_threshold = Real(1e-12)) {
  detail::require(std::abs(h.norm() - Real(1)) <= Real(1e-10), Errc::contract_violation,
                  "history state is not normalized");
  const Index d = h.system_dim();
  const Index n = h.clock_dim();
  const auto s = h.schmidt();
  const Index r = s.rank(rank_threshold);

  SpecialBasisReport<Real> rep;
  rep.schmidt_values = s.values.head(r);
  rep.system_vectors = s.left.leftCols(r);
  rep.clock_vectors = complete_orthonormal<Real>(s.right.leftCols(r), n);
  // |tau> = (1/sqrt(N)) sum_k e^{-i 2 pi k tau / N} |k>_T with |k>_T = c_{-k},
  // i.e. |tau> = (1/sqrt(N)) sum_j e^{i 2 pi j tau / N} c_j.
  rep.tau_basis = rep.clock_vectors * dft_matrix<Real>(n);
  rep.effective_hamiltonian = ComplexMatrix<Real>::Zero(d, d);
  rep.seed = StateVector<Real>::Zero(d);
  for (Index j = 0; j < r; ++j) {
    const Real energy = two_pi<Real> * Real(j) / Real(n);
    rep.effective_hamiltonian += energy * rep.system_vectors.col(j) * rep.system_vectors.col(j).adjoint();
    rep.seed += s.values(j) * rep.system_vectors.col(j);
    rep.k_assignment.push_back(j);
  }
  return rep;
}

template <typename Real = double>
struct ConjugateReport {
  StateVector<Real> lambda;        // Lambda_xi, xi = 0..N-1
  RealVector<Real> weights;        // |Lambda_xi|^2
  ComplexMatrix<Real> xi_basis;    // d_S x N, column xi = |xi>
  ComplexMatrix<Real> tau_basis;   // N x N, column tau = |tau>
  Real clock_evolution_residual = 0;

  /// |Psi_xi> = (1/sqrt(N)) sum_tau |xi + tau> |tau>.
  StateVector<Real> maximally_entangled_history(Index xi) const {
    const Index n = tau_basis.rows();
    StateVector<Real> v = StateVector<Real>::Zero(xi_basis.rows() * n);
    for (Index tau = 0; tau < n; ++tau) v += kron(xi_basis.col((xi + tau) % n), tau_basis.col(tau));
    return v / std::sqrt(Real(n));
  }

  StateVector<Real> reconstruct() const {
    StateVector<Real> v = StateVector<Real>::Zero(xi_basis.rows() * tau_basis.rows());
    for (Index xi = 0; xi < lambda.size(); ++xi) v += lambda(xi) * maximally_entangled_history(xi);
    return v;
  }
};

/// Expansion over maximally entangled history states with coefficients given
/// by the DFT of the Schmidt coefficients. Needs d_S = N.
template <typename Real>
ConjugateReport<Real> conjugate_representation(const HistoryState<Real>& h, Real rank_threshold = Real(1e-12)) {
  const Index n = h.clock_dim();
  detail::require(h.system_dim() == n, Errc::unsupported_shape,
                  "conjugate representation needs d_S = N (got d_S = " + std::to_string(h.system_dim()) +
                      ", N = " + std::to_string(n) + ")");
  detail::require(std::abs(h.norm() - Real(1)) <= Real(1e-10), Errc::contract_violation,
                  "history state is not normalized");
  const auto s = h.schmidt();
  const Index r = s.rank(rank_threshold);
  RealVector<Real> lam = RealVector<Real>::Zero(n);
  lam.head(r) = s.values.head(r);
  const ComplexMatrix<Real> sys = complete_orthonormal<Real>(s.left.leftCols(r), n);
  const ComplexMatrix<Real> clk = complete_orthonormal<Real>(s.right.leftCols(r), n);
  const ComplexMatrix<Real> f = dft_matrix<Real>(n);

  ConjugateReport<Real> rep;
  rep.lambda = f * lam.template cast<Complex<Real>>();
  rep.weights = rep.lambda.cwiseAbs2();
  rep.xi_basis = sys * f.conjugate();
  rep.tau_basis = clk * f;

  // Clock momentum of the special basis: 2 pi k / N on |k>_T = c_{-k}.
  StateVector<Real> pspec(n);
  for (Index j = 0; j < n; ++j) pspec(j) = two_pi<Real> * Real((n - j) % n) / Real(n);
  const ComplexMatrix<Real> a = h.amplitude_matrix();
  const Real root_n = std::sqrt(Real(n));
  const StateVector<Real> t0 = root_n * (a.transpose() * rep.xi_basis.col(0).conjugate());
  Real worst = 0;
  for (Index xi = 0; xi < n; ++xi) {
    const StateVector<Real> t_xi = root_n * (a.transpose() * rep.xi_basis.col(xi).conjugate());
    StateVector<Real> phases(n);
    for (Index j = 0; j < n; ++j) phases(j) = std::polar(Real(1), -Real(xi) * std::real(pspec(j)));
    const StateVector<Real> evolved = clk * phases.asDiagonal() * (clk.adjoint() * t0);
    worst = std::max(worst, (t_xi - evolved).norm());
  }
  rep.clock_evolution_residual = worst;
  return rep;
}

}  // namespace histclock

#endif  // HISTCLOCK_HISTORY_HPP
