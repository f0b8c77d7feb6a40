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

#ifndef HISTCLOCK_OPSTATES_HPP
#define HISTCLOCK_OPSTATES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "histclock/entanglement.hpp"
#include "histclock/history.hpp"
#include "histclock/linalg.hpp"
#include "histclock/weyl.hpp"

namespace histclock {

/// Step-sequence spec that walks through weyl_set(d) using two distinct steps.
template <typename Real = double>
EvolutionSpec<Real> weyl_steps(Index d) {
  return StepSequence<Real>{weyl_step_list<Real>(d)};
}

//----------------------------------------------------------------------------
// Operator states
//----------------------------------------------------------------------------

/// |O> = (O (x) 1)|1> with |1> = d^{-1/2} sum_q |q q>.
template <typename Real = double>
struct OperatorState {
  ComplexMatrix<Real> op;
  StateVector<Real> vec;
  Index dim = 0;
};

template <typename Real>
StateVector<Real> choi_vector(const ComplexMatrix<Real>& o) {
  detail::require(o.rows() == o.cols() && o.rows() >= 1, Errc::invalid_shape, "operator must be square");
  const Index d = o.rows();
  StateVector<Real> v(d * d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) v(a * d + b) = o(a, b);
  }
  return v / std::sqrt(Real(d));
}

template <typename Real>
OperatorState<Real> choi_state(const ComplexMatrix<Real>& o) {
  return {o, choi_vector(o), o.rows()};
}

/// Trace-orthogonal operator basis of size d^2: the Weyl set, or {1} for d = 1.
template <typename Real = double>
std::vector<ComplexMatrix<Real>> default_operator_basis(Index d) {
  detail::require(d >= 1, Errc::invalid_dimension, "operator basis needs d >= 1");
  if (d == 1) return {ComplexMatrix<Real>::Identity(1, 1)};
  return weyl_set<Real>(d);
}

template <typename Real = double>
struct OperatorSchmidt {
  RealVector<Real> values;               // lambda_k^W, descending
  std::vector<ComplexMatrix<Real>> a;    // d_A x d_A, Tr[A_k^dagger A_l] = d_A delta
  std::vector<ComplexMatrix<Real>> b;    // d_B x d_B, Tr[B_k^dagger B_l] = d_B delta
  ComplexMatrix<Real> expansion;         // M_ij

  Index rank(Real threshold = Real(1e-12)) const { return (values.array() > threshold).count(); }

  Real entropy() const { return entropy_bits(RealVector<Real>(values.cwiseAbs2())); }
  Real e2() const { return Real(2) * (Real(1) - values.array().pow(4).sum()); }

  ComplexMatrix<Real> reconstruct() const {
    ComplexMatrix<Real> w = ComplexMatrix<Real>::Zero(a.front().rows() * b.front().rows(),
                                                      a.front().rows() * b.front().rows());
    for (std::size_t k = 0; k < a.size(); ++k) w += values(static_cast<Index>(k)) * kron(a[k], b[k]);
    return w;
  }
};

namespace detail {

template <typename Real>
void require_operator_basis(const std::vector<ComplexMatrix<Real>>& basis, Index d, const char* name) {
  require(static_cast<Index>(basis.size()) == d * d, Errc::invalid_shape,
          std::string(name) + " must contain d^2 operators");
  for (const auto& c : basis) {
    require(c.rows() == d && c.cols() == d, Errc::invalid_shape, std::string(name) + " has the wrong shape");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex<Real> g = (basis[i].adjoint() * basis[j]).trace();
      const Complex<Real> expected = i == j ? Complex<Real>(Real(d)) : Complex<Real>(0);
      require(std::abs(g - expected) <= 1e-8 * Real(d), Errc::contract_violation,
              std::string(name) + " is not trace-orthogonal");
    }
  }
}

}  // namespace detail

/// Operator Schmidt form of W on a d_A x d_B space from its expansion
/// M_ij = Tr[(C_i (x) D_j)^dagger W] / (d_A d_B) in trace-orthogonal bases.
template <typename Real>
OperatorSchmidt<Real> operator_schmidt(const ComplexMatrix<Real>& w, Index da, Index db,
                                       const std::vector<ComplexMatrix<Real>>& basis_a,
                                       const std::vector<ComplexMatrix<Real>>& basis_b) {
  detail::require(da >= 1 && db >= 1, Errc::invalid_dimension, "subsystem dimensions must be positive");
  detail::require(w.rows() == da * db && w.cols() == da * db, Errc::invalid_shape,
                  "operator does not match d_A x d_B");
  detail::require_operator_basis(basis_a, da, "basis A");
  detail::require_operator_basis(basis_b, db, "basis B");

  const Index na = da * da;
  const Index nb = db * db;
  OperatorSchmidt<Real> out;
  out.expansion.resize(na, nb);
  // Tr[(C (x) D)^dagger W] = sum over blocks W_{(a,c),(a',c')} conj(C_{a a'}) conj(D_{c c'}).
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < nb; ++j) {
      Complex<Real> acc(0);
      const auto& c = basis_a[static_cast<std::size_t>(i)];
      const auto& dm = basis_b[static_cast<std::size_t>(j)];
      for (Index a = 0; a < da; ++a) {
        for (Index a2 = 0; a2 < da; ++a2) {
          const Complex<Real> ca = std::conj(c(a, a2));
          if (ca == Complex<Real>(0)) continue;
          acc += ca * (dm.conjugate().cwiseProduct(w.block(a * db, a2 * db, db, db))).sum();
        }
      }
      out.expansion(i, j) = acc / Real(da * db);
    }
  }

  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(out.expansion, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.values = svd.singularValues();
  const ComplexMatrix<Real>& u = svd.matrixU();
  const ComplexMatrix<Real> v = svd.matrixV().conjugate();
  for (Index k = 0; k < out.values.size(); ++k) {
    ComplexMatrix<Real> ak = ComplexMatrix<Real>::Zero(da, da);
    ComplexMatrix<Real> bk = ComplexMatrix<Real>::Zero(db, db);
    for (Index i = 0; i < na; ++i) ak += u(i, k) * basis_a[static_cast<std::size_t>(i)];
    for (Index j = 0; j < nb; ++j) bk += v(j, k) * basis_b[static_cast<std::size_t>(j)];
    out.a.push_back(std::move(ak));
    out.b.push_back(std::move(bk));
  }
  return out;
}

template <typename Real>
OperatorSchmidt<Real> operator_schmidt(const ComplexMatrix<Real>& w, Index da, Index db) {
  return operator_schmidt(w, da, db, default_operator_basis<Real>(da), default_operator_basis<Real>(db));
}

//----------------------------------------------------------------------------
// Control-U_t and operator history states
//----------------------------------------------------------------------------

/// W = sum_t U_t (x) |t><t| on system (x) clock.
template <typename Real>
ComplexMatrix<Real> control_unitary(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  ComplexMatrix<Real> w = ComplexMatrix<Real>::Zero(d * n, d * n);
  for (Index t = 0; t < n; ++t) {
    const auto& u = us[static_cast<std::size_t>(t)];
    for (Index q = 0; q < d; ++q) {
      for (Index p = 0; p < d; ++p) w(q * n + t, p * n + t) = u(q, p);
    }
  }
  return w;
}

/// Schmidt coefficients of W as the singular values of M / sqrt(N), with
/// M_ti = Tr[C_i^dagger U_t] / d_S in a trace-orthogonal system basis.
template <typename Real>
RealVector<Real> control_operator_schmidt(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  const auto basis = default_operator_basis<Real>(d);
  ComplexMatrix<Real> m(n, d * d);
  for (Index t = 0; t < n; ++t) {
    for (Index i = 0; i < d * d; ++i) {
      m(t, i) = (basis[static_cast<std::size_t>(i)].adjoint() * us[static_cast<std::size_t>(t)]).trace() / Real(d);
    }
  }
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(m / std::sqrt(Real(n)));
  return svd.singularValues();
}

/// W (1 (x) F) |seed>|0>, the circuit that prepares the history state.
template <typename Real>
HistoryState<Real> generate_via_circuit(const StateVector<Real>& seed, const EvolutionSpec<Real>& spec,
                                        double tol = 1e-10) {
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  detail::require(seed.size() == d, Errc::invalid_shape, "seed does not match the system dimension");
  detail::require(std::abs(seed.norm() - Real(1)) <= tol, Errc::contract_violation, "seed state is not normalized");
  const ComplexMatrix<Real> prep = kron(ComplexMatrix<Real>::Identity(d, d), dft_matrix<Real>(n));
  const StateVector<Real> input = kron(seed, basis_state<Real>(n, 0));
  return HistoryState<Real>(d, n, control_unitary(spec, tol) * (prep * input));
}

/// (1/d) sum_{p,q} U_pq |seed>|p>|q>, index s d^2 + p d + q.
template <typename Real>
StateVector<Real> double_clock_history(const StateVector<Real>& seed, Index d) {
  detail::require(seed.size() == d, Errc::invalid_shape, "seed does not match the system dimension");
  const auto set = weyl_set<Real>(d);
  StateVector<Real> out = StateVector<Real>::Zero(d * d * d);
  for (Index q = 0; q < d; ++q) {
    for (Index p = 0; p < d; ++p) {
      const StateVector<Real> s = set[static_cast<std::size_t>(q * d + p)] * seed;
      for (Index r = 0; r < d; ++r) out(r * d * d + p * d + q) = s(r) / Real(d);
    }
  }
  return out;
}

/// Reorders the clock pair (p, q) of double_clock_history into t = q d + p.
template <typename Real>
StateVector<Real> merge_double_clock(const StateVector<Real>& v, Index d) {
  detail::require(v.size() == d * d * d, Errc::invalid_shape, "vector is not a double-clock state");
  StateVector<Real> out(v.size());
  for (Index r = 0; r < d; ++r) {
    for (Index p = 0; p < d; ++p) {
      for (Index q = 0; q < d; ++q) out(r * d * d + q * d + p) = v(r * d * d + p * d + q);
    }
  }
  return out;
}

/// (1/sqrt(N)) sum_t |U_t> (x) |t>, a history state with system dimension d_S^2.
template <typename Real>
HistoryState<Real> operator_history_state(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  ComplexMatrix<Real> states(d * d, n);
  for (Index t = 0; t < n; ++t) states.col(t) = choi_vector(us[static_cast<std::size_t>(t)]);
  return HistoryState<Real>::from_system_states(states);
}

/// 2 (1 - (1/N^2) sum_{t,t'} |Tr[U_t^dagger U_t'] / d_S|^2).
template <typename Real>
Real e2_operator(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  Real acc = 0;
  for (Index t = 0; t < n; ++t) {
    for (Index s = 0; s < n; ++s) {
      const Complex<Real> ov =
          (us[static_cast<std::size_t>(t)].adjoint() * us[static_cast<std::size_t>(s)]).trace() / Real(d);
      acc += std::norm(ov);
    }
  }
  return Real(2) * (Real(1) - acc / Real(n * n));
}

template <typename Real = double>
struct StepOperatorHistory {
  StateVector<Real> state;   // index i * N^2 + t * N + t', i the Choi index
  RealVector<Real> schmidt_values;
  Real entropy = 0;
};

/// (1/sqrt(N)) sum_t |U_{t,t-1}> (x) |t, t-1>.
template <typename Real>
StepOperatorHistory<Real> step_operator_history(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const auto steps = step_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  const Index dc = n * n;
  StepOperatorHistory<Real> out;
  out.state = StateVector<Real>::Zero(d * d * dc);
  const Real scale = Real(1) / std::sqrt(Real(n));
  for (Index s = 1; s <= n; ++s) {
    const StateVector<Real> v = choi_vector(steps[static_cast<std::size_t>(s - 1)]);
    const Index clock = (s % n) * n + (s - 1);
    for (Index i = 0; i < d * d; ++i) out.state(i * dc + clock) = scale * v(i);
  }
  const auto sd = schmidt_split(out.state, d * d, dc);
  out.schmidt_values = sd.values;
  out.entropy = entropy_bits(RealVector<Real>(sd.values.cwiseAbs2()));
  return out;
}

//----------------------------------------------------------------------------
// Entangling power
//----------------------------------------------------------------------------

/// Haar average of E2(S, T), (d_S / (d_S + 1)) E2(W).
template <typename Real>
Real entangling_power_analytic(const EvolutionSpec<Real>& spec, double tol = 1e-10) {
  const Real d = Real(system_dim(spec));
  return d / (d + Real(1)) * e2_operator(spec, tol);
}

template <typename Real = double>
struct MonteCarloEstimate {
  Real mean = 0;
  Real std_error = 0;
  Index samples = 0;
};

/// Haar Monte Carlo estimate of the average E2(S, T). Sample i uses the seed
/// derive_seed(seed, i), so the result does not depend on `workers`.
template <typename Real>
MonteCarloEstimate<Real> entangling_power_mc(const EvolutionSpec<Real>& spec, Index samples, std::uint64_t seed,
                                             unsigned workers = 1, double tol = 1e-10) {
  detail::require(samples >= 2, Errc::invalid_argument, "Monte Carlo needs at least 2 samples");
  const auto us = cumulative_unitaries(spec, tol);
  const Index d = system_dim(spec);
  const Index n = clock_dim(spec);
  std::vector<Real> values(static_cast<std::size_t>(samples));

  auto run = [&](Index begin, Index end) {
    ComplexMatrix<Real> states(d, n);
    for (Index i = begin; i < end; ++i) {
      const StateVector<Real> s0 = haar_state<Real>(d, derive_seed(seed, static_cast<std::uint64_t>(i)));
      for (Index t = 0; t < n; ++t) states.col(t) = us[static_cast<std::size_t>(t)] * s0;
      values[static_cast<std::size_t>(i)] = e2_from_schmidt(HistoryState<Real>::from_system_states(states).schmidt());
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(samples)));
  if (workers == 1) {
    run(0, samples);
  } else {
    std::vector<std::thread> pool;
    const Index chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const Index begin = std::min<Index>(samples, w * chunk);
      const Index end = std::min<Index>(samples, begin + chunk);
      pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  MonteCarloEstimate<Real> est;
  est.samples = samples;
  Real sum = 0;
  for (Real v : values) sum += v;
  est.mean = sum / Real(samples);
  Real ss = 0;
  for (Real v : values) ss += (v - est.mean) * (v - est.mean);
  est.std_error = std::sqrt(ss / Real(samples - 1)) / std::sqrt(Real(samples));
  return est;
}

/// Effective number of orthogonal states 1 / (1 - <E2> / 2).
template <typename Real>
Real effective_dimension(Real avg_e2) {
  detail::require(avg_e2 > Real(-1e-12) && avg_e2 < Real(2), Errc::out_of_range,
                  "average quadratic entropy must lie in [0, 2)");
  return Real(1) / (Real(1) - std::max(avg_e2, Real(0)) / Real(2));
}

}  // namespace histclock

#endif  // HISTCLOCK_OPSTATES_HPP
