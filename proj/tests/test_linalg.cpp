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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "histclock/histclock.hpp"

namespace {

using namespace histclock;
using Matrix = ComplexMatrix<double>;
using Vector = StateVector<double>;
using C = Complex<double>;

constexpr double kPi = std::numbers::pi;

template <typename F>
void expect_errc(F&& f, Errc code) {
  try {
    f();
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// Oracle: rho_A(i, j) = sum_k v(i dB + k) conj(v(j dB + k)), by explicit loops.
Matrix reduced_a_by_loops(const Vector& v, Index da, Index db) {
  Matrix rho = Matrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) rho(i, j) += v(i * db + k) * std::conj(v(j * db + k));
  return rho;
}

TEST(Dft, SingleSite) {
  const Matrix f = dft_matrix<double>(1);
  ASSERT_EQ(f.rows(), 1);
  EXPECT_NEAR(std::abs(f(0, 0) - C(1)), 0.0, 1e-15);
}

TEST(Dft, TwoSitesIsHadamard) {
  const Matrix f = dft_matrix<double>(2);
  const double s = 1 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  EXPECT_LT(max_abs_diff(f, h), 1e-15);
}

TEST(Dft, EntriesMatchDefinition) {
  const Index n = 5;
  const Matrix f = dft_matrix<double>(n);
  for (Index k = 0; k < n; ++k)
    for (Index t = 0; t < n; ++t)
      EXPECT_LT(std::abs(f(k, t) - std::exp(C(0, 2 * kPi * k * t / n)) / std::sqrt(5.0)), 1e-14);
}

TEST(Dft, UnitaryUpTo256) {
  for (Index n : {1, 2, 3, 7, 8, 16, 31, 64, 128, 256}) {
    const Matrix f = dft_matrix<double>(n);
    EXPECT_LT(max_abs_diff(f.adjoint() * f, Matrix::Identity(n, n)), 1e-12) << "N = " << n;
  }
}

TEST(Dft, ZeroDimensionRejected) {
  expect_errc([] { dft_matrix<double>(0); }, Errc::invalid_dimension);
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)), Matrix(Matrix::Identity(4, 4)));
}

TEST(Kron, DiagonalHandExpansion) {
  Matrix a = Matrix::Zero(2, 2);
  Matrix b = Matrix::Zero(2, 2);
  a(0, 0) = 1; a(1, 1) = 2;
  b(0, 0) = 3; b(1, 1) = 4;
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 3; expected(1, 1) = 4; expected(2, 2) = 6; expected(3, 3) = 8;
  EXPECT_EQ(kron(a, b), expected);
}

TEST(Kron, IndexConvention) {
  random::Engine rng(3);
  const Matrix a = sample_haar_unitary<double>(2, rng);
  const Matrix b = Matrix::Random(3, 4);
  const Matrix k = kron(a, b);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index r = 0; r < 3; ++r)
        for (Index c = 0; c < 4; ++c) EXPECT_EQ(k(i * 3 + r, j * 4 + c), a(i, j) * b(r, c));
}

TEST(Kron, UnitaryPairsStayUnitary) {
  random::Engine rng(4);
  for (int i = 0; i < 10; ++i) {
    const Matrix u = kron(sample_haar_unitary<double>(3, rng), sample_haar_unitary<double>(3, rng));
    EXPECT_TRUE(is_unitary(u, 1e-12));
  }
}

TEST(Schmidt, ProductState) {
  const Vector v = kron(basis_state<double>(2, 0), basis_state<double>(3, 0));
  const auto s = schmidt_split(v, 2, 3);
  EXPECT_EQ(s.rank(), 1);
  EXPECT_NEAR(s.values(0), 1.0, 1e-15);
}

TEST(Schmidt, BellState) {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  const auto s = schmidt_split(v, 2, 2);
  EXPECT_NEAR(s.values(0), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.values(1), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Schmidt, RandomReconstruction) {
  const Vector v = haar_state<double>(32, 17);
  const auto s = schmidt_split(v, 4, 8);
  EXPECT_LT((s.reconstruct() - v).norm(), 1e-12);
  EXPECT_NEAR(s.values.squaredNorm(), 1.0, 1e-12);
  for (Index k = 1; k < s.values.size(); ++k) EXPECT_GE(s.values(k - 1), s.values(k));
  EXPECT_LT(max_abs_diff(s.left.adjoint() * s.left, Matrix::Identity(s.left.cols(), s.left.cols())), 1e-12);
  EXPECT_LT(max_abs_diff(s.right.adjoint() * s.right, Matrix::Identity(s.right.cols(), s.right.cols())), 1e-12);
}

TEST(Schmidt, DimensionMismatch) {
  expect_errc([] { schmidt_split(haar_state<double>(6, 1), 2, 2); }, Errc::invalid_shape);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(partial_trace(v, 2, 2, Subsystem::A), Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(v, 2, 2, Subsystem::B), Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, ProductMarginalIsProjector) {
  const Vector a = haar_state<double>(3, 5);
  const Vector b = haar_state<double>(2, 6);
  const Matrix rho = partial_trace(Vector(kron(a, b)), 3, 2, Subsystem::A);
  EXPECT_LT(max_abs_diff(rho, Matrix(a * a.adjoint())), 1e-14);
  EXPECT_LT(max_abs_diff(rho * rho, rho), 1e-14);
}

TEST(PartialTrace, MatchesLoopOracle) {
  const Vector v = haar_state<double>(15, 8);
  EXPECT_LT(max_abs_diff(partial_trace(v, 3, 5, Subsystem::A), reduced_a_by_loops(v, 3, 5)), 1e-15);
  // Keeping B equals keeping A after swapping the factors.
  Vector swapped(15);
  for (Index i = 0; i < 3; ++i)
    for (Index k = 0; k < 5; ++k) swapped(k * 3 + i) = v(i * 5 + k);
  EXPECT_LT(max_abs_diff(partial_trace(v, 3, 5, Subsystem::B), reduced_a_by_loops(swapped, 5, 3)), 1e-15);
}

TEST(PartialTrace, StateProperties) {
  const Vector v = haar_state<double>(24, 9);
  const Matrix rho = partial_trace(v, 4, 6, Subsystem::A);
  EXPECT_TRUE(is_hermitian(rho, 1e-14));
  EXPECT_NEAR(std::abs(rho.trace() - C(1)), 0.0, 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-14);
}

TEST(PartialTrace, ShapeMismatch) {
  expect_errc([] { partial_trace(haar_state<double>(5, 1), 2, 2, Subsystem::A); }, Errc::invalid_shape);
}

TEST(Property, SchmidtValuesAreRootsOfMarginalSpectrum) {
  random::Engine rng(2024);
  for (int i = 0; i < 100; ++i) {
    const Index da = random::uniform_index(rng, 1, 8);
    const Index db = random::uniform_index(rng, 1, 8);
    const Vector v = sample_haar_state<double>(da * db, rng);
    const auto s = schmidt_split(v, da, db);
    Eigen::SelfAdjointEigenSolver<Matrix> es(reduced_a_by_loops(v, da, db));
    const RealVector<double> ev = es.eigenvalues().reverse();
    for (Index k = 0; k < s.values.size(); ++k) {
      EXPECT_NEAR(s.values(k), std::sqrt(std::max(0.0, ev(k))), 1e-10);
    }
  }
}

TEST(Expm, ZeroIsIdentity) {
  EXPECT_LT(max_abs_diff(hermitian_expm(Matrix(Matrix::Zero(3, 3)), 1.7), Matrix::Identity(3, 3)), 1e-15);
}

TEST(Expm, SigmaYQuarterTurn) {
  Matrix sy(2, 2);
  sy << 0, C(0, -1), C(0, 1), 0;
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  EXPECT_LT(max_abs_diff(hermitian_expm(sy, kPi / 2), expected), 1e-14);
}

TEST(Expm, CompositionAndDeterminant) {
  random::Engine rng(11);
  for (int i = 0; i < 20; ++i) {
    const Index d = random::uniform_index(rng, 1, 6);
    const Matrix h = random::hermitian<double>(rng, d);
    const double a = random::uniform_real<double>(rng, -2, 2);
    const double b = random::uniform_real<double>(rng, -2, 2);
    EXPECT_LT(max_abs_diff(hermitian_expm(h, a) * hermitian_expm(h, b), hermitian_expm(h, a + b)), 1e-10);
    EXPECT_NEAR(std::abs(hermitian_expm(h, a).determinant()), 1.0, 1e-10);
    EXPECT_TRUE(is_unitary(hermitian_expm(h, a), 1e-10));
  }
}

TEST(Expm, NonHermitianRejected) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  expect_errc([&] { hermitian_expm(m, 1.0); }, Errc::contract_violation);
}

TEST(Haar, NormAndDeterminism) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 123456789ULL}) {
    const Vector v = haar_state<double>(5, seed);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  }
  EXPECT_EQ(haar_state<double>(4, 42), haar_state<double>(4, 42));
  EXPECT_NE(haar_state<double>(4, 42), haar_state<double>(4, 43));
  EXPECT_EQ(haar_unitary<double>(3, 42), haar_unitary<double>(3, 42));
  EXPECT_TRUE(is_unitary(haar_unitary<double>(5, 7), 1e-12));
}

TEST(Haar, ZeroDimensionRejected) {
  expect_errc([] { haar_state<double>(0, 1); }, Errc::invalid_dimension);
}

TEST(Haar, FirstMomentIsMaximallyMixed) {
  // Entrywise mean of |v><v| against I/3, in units of the sample standard error.
  const int samples = 10000;
  const Index d = 3;
  random::Engine rng(99);
  Matrix sum = Matrix::Zero(d, d);
  RealMatrix<double> sum_sq_re = RealMatrix<double>::Zero(d, d);
  RealMatrix<double> sum_sq_im = RealMatrix<double>::Zero(d, d);
  for (int i = 0; i < samples; ++i) {
    const Vector v = sample_haar_state<double>(d, rng);
    const Matrix p = v * v.adjoint();
    sum += p;
    sum_sq_re += p.real().cwiseAbs2();
    sum_sq_im += p.imag().cwiseAbs2();
  }
  const Matrix mean = sum / double(samples);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double expected = i == j ? 1.0 / 3.0 : 0.0;
      const double var_re = sum_sq_re(i, j) / samples - mean(i, j).real() * mean(i, j).real();
      const double se_re = std::sqrt(var_re / samples);
      EXPECT_LT(std::abs(mean(i, j).real() - expected), 5 * se_re);
      if (i != j) {
        const double var_im = sum_sq_im(i, j) / samples - mean(i, j).imag() * mean(i, j).imag();
        EXPECT_LT(std::abs(mean(i, j).imag()), 5 * std::sqrt(var_im / samples));
      }
    }
  }
}

TEST(Haar, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Completion, ExtendsToOrthonormalBasis) {
  Matrix partial(4, 2);
  partial.col(0) = haar_state<double>(4, 1);
  Vector w = haar_state<double>(4, 2);
  w -= partial.col(0) * partial.col(0).dot(w);
  partial.col(1) = w / w.norm();
  const Matrix b = complete_orthonormal<double>(partial, 4);
  EXPECT_LT(max_abs_diff(b.adjoint() * b, Matrix::Identity(4, 4)), 1e-13);
  EXPECT_EQ(b.leftCols(2), partial);
  EXPECT_EQ(complete_orthonormal<double>(partial, 4), b);
}

TEST(Generator, LogOfUnitary) {
  random::Engine rng(5);
  for (int i = 0; i < 10; ++i) {
    const Matrix u = sample_haar_unitary<double>(5, rng);
    const Matrix j = unitary_generator(u);
    EXPECT_TRUE(is_hermitian(j, 1e-10));
    EXPECT_LT(max_abs_diff(hermitian_expm(j, 1.0, 1e-9), u), 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> es((j + j.adjoint()) / 2.0);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
    EXPECT_LT(es.eigenvalues().maxCoeff(), 2 * kPi);
  }
}

}  // namespace
