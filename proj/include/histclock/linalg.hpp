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

#ifndef HISTCLOCK_LINALG_HPP
#define HISTCLOCK_LINALG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "histclock/common.hpp"

namespace histclock {

//----------------------------------------------------------------------------
// Small predicates
//----------------------------------------------------------------------------

template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.size() == 0) return Real(0);
  return m.cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
auto max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return max_abs(a - b);
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  using Scalar = typename Derived::Scalar;
  const auto id = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(m.rows(), m.cols());
  return max_abs_diff(m.adjoint() * m, id) <= tol;
}

//----------------------------------------------------------------------------
// Basic constructions
//----------------------------------------------------------------------------

/// Unitary DFT matrix, F(k, t) = exp(i 2 pi k t / N) / sqrt(N). Column k is
/// the Fourier state |k> expressed in the computational basis.
template <typename Real = double>
ComplexMatrix<Real> dft_matrix(Index n) {
  detail::require(n >= 1, Errc::invalid_dimension, "dft_matrix needs N >= 1");
  ComplexMatrix<Real> f(n, n);
  const Real norm = Real(1) / std::sqrt(Real(n));
  for (Index k = 0; k < n; ++k) {
    for (Index t = 0; t < n; ++t) {
      // Reduce k*t mod N first so the phase argument stays small.
      const Real phase = two_pi<Real> * Real((k * t) % n) / Real(n);
      f(k, t) = std::polar(norm, phase);
    }
  }
  return f;
}

/// Kronecker product; (A (x) B)(i rB + k, j cB + l) = A(i, j) B(k, l).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Computational basis vector |i> of dimension d.
template <typename Real = double>
StateVector<Real> basis_state(Index d, Index i) {
  detail::require(d >= 1, Errc::invalid_dimension, "basis_state needs d >= 1");
  detail::require(i >= 0 && i < d, Errc::out_of_range, "basis_state index");
  StateVector<Real> v = StateVector<Real>::Zero(d);
  v(i) = Real(1);
  return v;
}

/// Extend the orthonormal columns of `partial` to an orthonormal basis of
/// C^dim. Gram-Schmidt seeded with canonical basis columns, deterministic.
template <typename Real>
ComplexMatrix<Real> complete_orthonormal(const ComplexMatrix<Real>& partial, Index dim) {
  detail::require(partial.rows() == dim && partial.cols() <= dim, Errc::invalid_shape,
                  "complete_orthonormal: partial basis does not fit");
  ComplexMatrix<Real> basis(dim, dim);
  Index filled = partial.cols();
  basis.leftCols(filled) = partial;
  for (Index e = 0; e < dim && filled < dim; ++e) {
    StateVector<Real> v = basis_state<Real>(dim, e);
    // Two passes of classical Gram-Schmidt are enough for double precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < filled; ++j) {
        v -= basis.col(j) * basis.col(j).dot(v);
      }
    }
    const Real norm = v.norm();
    if (norm > Real(1e-6)) {
      basis.col(filled++) = v / norm;
    }
  }
  return basis;
}

//----------------------------------------------------------------------------
// Schmidt decomposition and reduced states
//----------------------------------------------------------------------------

/// Schmidt data of a bipartite pure state: v = sum_k values[k] left_k (x) right_k,
/// values sorted descending.
template <typename Real = double>
struct SchmidtDecomposition {
  RealVector<Real> values;
  ComplexMatrix<Real> left;   // dA x r
  ComplexMatrix<Real> right;  // dB x r

  Index rank(Real threshold = Real(1e-12)) const {
    Index r = 0;
    for (Index k = 0; k < values.size(); ++k) {
      if (values(k) > threshold) ++r;
    }
    return r;
  }

  StateVector<Real> reconstruct() const {
    StateVector<Real> v = StateVector<Real>::Zero(left.rows() * right.rows());
    for (Index k = 0; k < values.size(); ++k) {
      v += values(k) * kron(left.col(k), right.col(k));
    }
    return v;
  }
};

namespace detail {

// Amplitude matrix M(a, b) = v[a * dB + b].
template <typename Real>
ComplexMatrix<Real> reshape_bipartite(const StateVector<Real>& v, Index da, Index db) {
  require(da >= 1 && db >= 1, Errc::invalid_shape, "bipartite dimensions must be positive");
  require(v.size() == da * db, Errc::invalid_shape,
          "vector of dimension " + std::to_string(v.size()) + " does not split as " +
              std::to_string(da) + " x " + std::to_string(db));
  using RowMajor = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(v.data(), da, db);
}

}  // namespace detail

/// Schmidt decomposition of a dA*dB vector from the SVD of its reshaped
/// amplitude matrix.
template <typename Real>
SchmidtDecomposition<Real> schmidt_split(const StateVector<Real>& v, Index da, Index db) {
  const ComplexMatrix<Real> m = detail::reshape_bipartite(v, da, db);
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition<Real> s;
  s.values = svd.singularValues();
  s.left = svd.matrixU();
  // M = U S V^dagger, so the right factor of pair k is conj(V(:, k)).
  s.right = svd.matrixV().conjugate();
  return s;
}

enum class Subsystem { A, B };

/// Reduced density matrix of a bipartite pure state.
template <typename Real>
ComplexMatrix<Real> partial_trace(const StateVector<Real>& v, Index da, Index db, Subsystem keep) {
  const ComplexMatrix<Real> m = detail::reshape_bipartite(v, da, db);
  if (keep == Subsystem::A) return m * m.adjoint();
  return m.transpose() * m.conjugate();
}

//----------------------------------------------------------------------------
// Spectral functions
//----------------------------------------------------------------------------

/// exp(-i theta H) for Hermitian H, by spectral decomposition.
template <typename Real>
ComplexMatrix<Real> hermitian_expm(const ComplexMatrix<Real>& h, Real theta, double tol = 1e-10) {
  detail::require(h.rows() == h.cols(), Errc::invalid_shape, "hermitian_expm needs a square matrix");
  detail::require(is_hermitian(h, tol), Errc::contract_violation, "hermitian_expm: input is not Hermitian");
  if (h.rows() == 0) return h;
  const ComplexMatrix<Real> sym = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(sym);
  const auto& vals = es.eigenvalues();
  StateVector<Real> phases(vals.size());
  for (Index k = 0; k < vals.size(); ++k) phases(k) = std::polar(Real(1), -theta * vals(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Hermitian J with exp(-iJ) = U and spectrum in [0, 2 pi). Eigenphases within
/// `branch_tol` below 2 pi are mapped to 0 so that exact invariant vectors
/// (eigenvalue 1) are annihilated by J.
template <typename Real>
ComplexMatrix<Real> unitary_generator(const ComplexMatrix<Real>& u, double tol = 1e-10,
                                      double branch_tol = 1e-9) {
  detail::require(is_unitary(u, tol), Errc::contract_violation, "unitary_generator: input is not unitary");
  // U is normal, so its complex Schur form is diagonal up to roundoff.
  Eigen::ComplexSchur<ComplexMatrix<Real>> schur(u);
  const auto& t = schur.matrixT();
  RealVector<Real> theta(t.rows());
  for (Index k = 0; k < t.rows(); ++k) {
    Real a = -std::arg(t(k, k));
    if (a < 0) a += two_pi<Real>;
    if (a >= two_pi<Real> - Real(branch_tol)) a = 0;
    theta(k) = a;
  }
  const auto& q = schur.matrixU();
  ComplexMatrix<Real> j = q * theta.template cast<Complex<Real>>().asDiagonal() * q.adjoint();
  return (j + j.adjoint()) / Real(2);
}

//----------------------------------------------------------------------------
// Random sampling
//----------------------------------------------------------------------------

/// Deterministic stream splitting (splitmix64 finalizer over master ^ stream).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename Real, typename Rng>
StateVector<Real> sample_haar_state(Index d, Rng& rng) {
  detail::require(d >= 1, Errc::invalid_dimension, "haar_state needs d >= 1");
  std::normal_distribution<Real> gauss(0, 1);
  StateVector<Real> v(d);
  for (Index i = 0; i < d; ++i) {
    const Real re = gauss(rng);
    const Real im = gauss(rng);
    v(i) = Complex<Real>(re, im);
  }
  return v / v.norm();
}

/// Haar-random pure state: normalized vector of complex standard Gaussians.
template <typename Real = double>
StateVector<Real> haar_state(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_haar_state<Real>(d, rng);
}

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix,
/// with the phases of diag(R) absorbed into Q.
template <typename Real, typename Rng>
ComplexMatrix<Real> sample_haar_unitary(Index d, Rng& rng) {
  detail::require(d >= 1, Errc::invalid_dimension, "haar_unitary needs d >= 1");
  std::normal_distribution<Real> gauss(0, 1);
  ComplexMatrix<Real> z(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const Real re = gauss(rng);
      const Real im = gauss(rng);
      z(i, j) = Complex<Real>(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(z);
  ComplexMatrix<Real> q = qr.householderQ();
  const ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Real mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

template <typename Real = double>
ComplexMatrix<Real> haar_unitary(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_haar_unitary<Real>(d, rng);
}

}  // namespace histclock

#endif  // HISTCLOCK_LINALG_HPP
