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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "histclock/histclock.hpp"

namespace {

using namespace histclock;
using Matrix = ComplexMatrix<double>;
using Vector = StateVector<double>;
using Real = RealVector<double>;
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

Matrix pauli(char which) {
  Matrix m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

Real grid_energies(std::initializer_list<int> ks, Index n) {
  Real e(static_cast<Index>(ks.size()));
  Index i = 0;
  for (int k : ks) e(i++) = 2 * kPi * k / double(n);
  return e;
}

// Oracle for the history amplitude: sum_t (U_t s) (x) e_t / sqrt(N), by loops.
Vector history_by_loops(const std::vector<Matrix>& us, const Vector& s) {
  const Index d = s.size();
  const Index n = static_cast<Index>(us.size());
  Vector v = Vector::Zero(d * n);
  for (Index t = 0; t < n; ++t) {
    const Vector st = us[static_cast<std::size_t>(t)] * s;
    for (Index q = 0; q < d; ++q) v(q * n + t) = st(q) / std::sqrt(double(n));
  }
  return v;
}

TEST(Cumulative, QubitWeylSequence) {
  const EvolutionSpec<double> spec = WeylEvolution{2};
  const auto us = cumulative_unitaries(spec);
  ASSERT_EQ(us.size(), 4u);
  Matrix iy = C(0, 1) * pauli('y');
  EXPECT_LT(max_abs_diff(us[0], pauli('1')), 1e-12);
  EXPECT_LT(max_abs_diff(us[1], pauli('z')), 1e-12);
  EXPECT_LT(max_abs_diff(us[2], pauli('x')), 1e-12);
  EXPECT_LT(max_abs_diff(us[3], iy), 1e-12);
}

TEST(Cumulative, WeylStepsWalkTheSetAndClose) {
  for (Index d : {2, 3, 4, 5}) {
    const auto set = weyl_set<double>(d);
    const auto steps = weyl_step_list<double>(d);
    Matrix u = Matrix::Identity(d, d);
    for (Index t = 1; t <= d * d; ++t) {
      u = steps[static_cast<std::size_t>(t - 1)] * u;
      const Matrix& target = set[static_cast<std::size_t>(t % (d * d))];
      EXPECT_LT(max_abs_diff(u, target), 1e-12) << "d = " << d << ", t = " << t;
    }
  }
}

TEST(Cumulative, ConstantStartsAtIdentity) {
  random::Engine rng(1);
  const EvolutionSpec<double> spec = ConstantHamiltonian<double>{random::hermitian<double>(rng, 3), 5, 2.0};
  const auto us = cumulative_unitaries(spec);
  EXPECT_EQ(us.front(), Matrix(Matrix::Identity(3, 3)));
}

TEST(Cumulative, ConstantGridMatchesDirectExponential) {
  random::Engine rng(2);
  const Matrix h = random::hermitian<double>(rng, 3);
  const double tf = 1.7;
  const Index n = 6;
  const EvolutionSpec<double> spec = ConstantHamiltonian<double>{h, n, tf};
  const auto us = cumulative_unitaries(spec);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  for (Index j = 0; j < n; ++j) {
    const double t = tf * j / double(n - 1);
    Vector ph(3);
    for (Index k = 0; k < 3; ++k) ph(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
    const Matrix expected = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    EXPECT_LT(max_abs_diff(us[static_cast<std::size_t>(j)], expected), 1e-12);
  }
}

TEST(Cumulative, RandomStepsComposeBackToTheSteps) {
  random::Engine rng(3);
  const auto seq = random::step_sequence<double>(rng, 3, 7);
  const auto us = cumulative_unitaries(EvolutionSpec<double>(seq));
  for (Index t = 1; t < 7; ++t) {
    const Matrix step = us[static_cast<std::size_t>(t)] * us[static_cast<std::size_t>(t - 1)].adjoint();
    EXPECT_LT(max_abs_diff(step, seq.steps[static_cast<std::size_t>(t - 1)]), 1e-12);
    EXPECT_TRUE(is_unitary(us[static_cast<std::size_t>(t)], 1e-12));
  }
}

TEST(Validate, RejectsBadSpecs) {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  expect_errc([&] { validate(EvolutionSpec<double>(StepSequence<double>{{bad}})); }, Errc::contract_violation);
  expect_errc([] { validate(EvolutionSpec<double>(StepSequence<double>{})); }, Errc::invalid_dimension);
  expect_errc([] { validate(EvolutionSpec<double>(WeylEvolution{1})); }, Errc::invalid_dimension);
  expect_errc([&] { validate(EvolutionSpec<double>(ConstantHamiltonian<double>{bad, 3, std::nullopt})); },
              Errc::contract_violation);
  expect_errc(
      [] {
        validate(EvolutionSpec<double>(
            StepSequence<double>{{Matrix::Identity(2, 2), Matrix::Identity(3, 3)}}));
      },
      Errc::invalid_shape);
}

TEST(Build, MatchesLoopOracle) {
  random::Engine rng(4);
  const EvolutionSpec<double> spec = random::step_sequence<double>(rng, 3, 5);
  const Vector s = haar_state<double>(3, 5);
  const auto h = build_history_state(s, spec);
  EXPECT_LT((h.amplitudes() - history_by_loops(cumulative_unitaries(spec), s)).norm(), 1e-14);
  EXPECT_NEAR(h.norm(), 1.0, 1e-14);
  for (Index t = 0; t < 5; ++t) {
    EXPECT_LT((h.system_state(t) - cumulative_unitaries(spec)[static_cast<std::size_t>(t)] * s).norm(), 1e-13);
  }
}

TEST(Build, CommonEigenstateGivesProductHistory) {
  random::Engine rng(5);
  const Matrix v = sample_haar_unitary<double>(3, rng);
  const Real e = (Real(3) << 0.3, 1.1, -0.4).finished();
  const EvolutionSpec<double> spec = ConstantHamiltonian<double>::from_spectrum(e, v, 6, 2.5);
  const auto h = build_history_state(Vector(v.col(1)), spec);
  EXPECT_EQ(h.schmidt().rank(1e-10), 1);
  EXPECT_NEAR(vn_entropy(h.schmidt()), 0.0, 1e-10);
}

TEST(Build, SingleClockStateIsSeedTimesZero) {
  random::Engine rng(6);
  const EvolutionSpec<double> spec = ConstantHamiltonian<double>{random::hermitian<double>(rng, 4), 1, std::nullopt};
  const Vector s = haar_state<double>(4, 7);
  const auto h = build_history_state(s, spec);
  EXPECT_LT((h.amplitudes() - Vector(kron(s, basis_state<double>(1, 0)))).norm(), 1e-15);
}

TEST(Build, WeylHistoryIsMaximallyMixedOnSystem) {
  for (Index d : {2, 3}) {
    const Vector s = haar_state<double>(d, 40 + d);
    const auto h = build_history_state(s, EvolutionSpec<double>(WeylEvolution{d}));
    const Matrix states = h.system_states();
    const Matrix gram = states.adjoint() * states;
    double total = 0;
    for (Index t = 0; t < d * d; ++t)
      for (Index u = 0; u < d * d; ++u) total += std::norm(gram(t, u));
    EXPECT_NEAR(total, double(d * d * d), 1e-8);
    EXPECT_LT(max_abs_diff(Matrix(states * states.adjoint() / double(d * d)), Matrix(Matrix::Identity(d, d) / double(d))), 1e-12);
    EXPECT_NEAR(vn_entropy(h.schmidt()), std::log2(double(d)), 1e-10);
  }
}

TEST(Build, SeedErrors) {
  const EvolutionSpec<double> spec = WeylEvolution{2};
  expect_errc([&] { build_history_state(haar_state<double>(3, 1), spec); }, Errc::invalid_shape);
  expect_errc([&] { build_history_state(Vector(2.0 * haar_state<double>(2, 1)), spec); },
              Errc::contract_violation);
}

TEST(Build, SystemStateOutOfRange) {
  const auto h = build_history_state(haar_state<double>(2, 1), EvolutionSpec<double>(WeylEvolution{2}));
  expect_errc([&] { h.system_state(4); }, Errc::out_of_range);
}

TEST(GlobalUnitary, SingleStepIsTheStep) {
  random::Engine rng(7);
  const Matrix u = sample_haar_unitary<double>(3, rng);
  EXPECT_LT(max_abs_diff(global_unitary(EvolutionSpec<double>(StepSequence<double>{{u}})), u), 1e-15);
}

TEST(GlobalUnitary, ConstantHamiltonianFactorizes) {
  random::Engine rng(8);
  const Index n = 5;
  const auto c = random::constant_hamiltonian<double>(rng, grid_energies({0, 1, 3}, n), n);
  const Matrix step = hermitian_expm(c.hamiltonian, 1.0);
  const Matrix expected = kron(step, clock_shift<double>(n));
  EXPECT_LT(max_abs_diff(global_unitary(EvolutionSpec<double>(c)), expected), 1e-12);
}

TEST(GlobalUnitary, RandomSpecIsUnitary) {
  random::Engine rng(9);
  for (int i = 0; i < 10; ++i) {
    const EvolutionSpec<double> spec =
        random::step_sequence<double>(rng, random::uniform_index(rng, 1, 4), random::uniform_index(rng, 1, 8));
    EXPECT_TRUE(is_unitary(global_unitary(spec), 1e-12));
  }
}

TEST(ClockShift, MovesTickForward) {
  const Matrix s = clock_shift<double>(6);
  for (Index t = 0; t < 6; ++t) {
    EXPECT_LT((s * basis_state<double>(6, t) - basis_state<double>(6, (t + 1) % 6)).norm(), 1e-15);
  }
}

TEST(EigenResidual, ClosedCycleIsInvariant) {
  random::Engine rng(10);
  for (int i = 0; i < 10; ++i) {
    const Index d = random::uniform_index(rng, 1, 4);
    const Index n = random::uniform_index(rng, 1, 9);
    const EvolutionSpec<double> spec = random::closed_step_sequence<double>(rng, d, n);
    const auto h = build_history_state(sample_haar_state<double>(d, rng), spec);
    const auto r = eigen_residual(spec, h);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_EQ(r.sector, 0);
    EXPECT_EQ(r.eigenphase, 0.0);
  }
}

TEST(EigenResidual, PhaseShiftedHistoryLandsInSectorK) {
  random::Engine rng(11);
  const Index d = 3;
  const Index n = 7;
  for (Index k = 0; k < n; ++k) {
    // Steps carry an extra e^{-i 2 pi k / N}; the cycle still closes.
    auto seq = random::closed_step_sequence<double>(rng, d, n);
    for (auto& u : seq.steps) u *= std::polar(1.0, -2 * kPi * k / double(n));
    const EvolutionSpec<double> spec = seq;
    const auto base = build_history_state(sample_haar_state<double>(d, rng), spec);
    // Rephasing S_t by e^{i 4 pi k t / N} moves the history into sector 2k.
    Matrix states = base.system_states();
    for (Index t = 0; t < n; ++t) states.col(t) *= std::polar(1.0, 4 * kPi * k * t / double(n));
    const auto h = HistoryState<double>::from_system_states(states);
    const Vector image = global_unitary(spec) * h.amplitudes();
    const Index expected_k = (2 * k) % n;
    const double oracle = (image - std::polar(1.0, -2 * kPi * expected_k / double(n)) * h.amplitudes()).norm();
    ASSERT_LT(oracle, 1e-10);
    const auto r = eigen_residual(spec, h);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_EQ(r.sector, expected_k);
    EXPECT_NEAR(r.eigenphase, 2 * kPi * expected_k / double(n), 1e-15);
  }
}

TEST(EigenResidual, OpenCycleIsNotAnEigenstate) {
  random::Engine rng(12);
  const EvolutionSpec<double> spec = random::step_sequence<double>(rng, 3, 6);
  const auto h = build_history_state(sample_haar_state<double>(3, rng), spec);
  EXPECT_GT(eigen_residual(spec, h).residual, 1e-3);
}

TEST(EigenResidual, ShapeMismatch) {
  const auto h = build_history_state(haar_state<double>(2, 1), EvolutionSpec<double>(WeylEvolution{2}));
  expect_errc([&] { eigen_residual(EvolutionSpec<double>(WeylEvolution{3}), h); }, Errc::invalid_shape);
}

TEST(WheelerDeWitt, CommensurateConstantIsSeparable) {
  random::Engine rng(13);
  for (Index n : {3, 4, 6}) {
    // Energies on the 2 pi k / N grid, some outside [0, 2 pi).
    Real e(3);
    e << 2 * kPi * 1 / double(n), 2 * kPi * (2 + n) / double(n), -2 * kPi * 1 / double(n);
    const Matrix v = sample_haar_unitary<double>(3, rng);
    const EvolutionSpec<double> spec = ConstantHamiltonian<double>::from_spectrum(e, v, n);
    // Oracle: eigenvectors v_j (x) f_k with eigenvalue (E_j + 2 pi k / N) mod 2 pi.
    const Matrix f = dft_matrix<double>(n);
    Matrix expected = Matrix::Zero(3 * n, 3 * n);
    for (Index j = 0; j < 3; ++j) {
      for (Index k = 0; k < n; ++k) {
        double phase = std::fmod(e(j) + 2 * kPi * k / double(n), 2 * kPi);
        if (phase < 0) phase += 2 * kPi;
        if (phase > 2 * kPi - 1e-9) phase = 0;
        const Vector w = kron(Vector(v.col(j)), Vector(f.col(k)));
        expected += phase * w * w.adjoint();
      }
    }
    const Matrix j = wheeler_dewitt_generator(spec);
    EXPECT_LT(max_abs_diff(j, expected), 1e-8) << "N = " << n;
    EXPECT_LT(max_abs_diff(hermitian_expm(j, 1.0), global_unitary(spec)), 1e-10);
  }
}

TEST(WheelerDeWitt, SmallSpectrumIsTheSum) {
  random::Engine rng(14);
  const Index n = 8;
  const Real e = grid_energies({0, 1, 2}, n);
  const Matrix v = sample_haar_unitary<double>(3, rng);
  const auto c = ConstantHamiltonian<double>::from_spectrum(e, v, n);
  // Sums 2 pi (j + k) / N stay below 2 pi only for j + k < N, so compare on that block.
  const Matrix sum = kron(c.hamiltonian, Matrix::Identity(n, n)) + kron(Matrix::Identity(3, 3), clock_momentum<double>(n));
  const Matrix j = wheeler_dewitt_generator(EvolutionSpec<double>(c));
  const Matrix f = dft_matrix<double>(n);
  for (Index a = 0; a < 3; ++a) {
    for (Index k = 0; k + a < n; ++k) {
      const Vector w = kron(Vector(v.col(a)), Vector(f.col(k)));
      EXPECT_LT((j * w - sum * w).norm(), 1e-8);
    }
  }
}

TEST(WheelerDeWitt, IdentityGivesZeroGenerator) {
  const EvolutionSpec<double> spec = StepSequence<double>{{Matrix::Identity(2, 2)}};
  EXPECT_LT(max_abs(wheeler_dewitt_generator(spec)), 1e-12);
}

TEST(WheelerDeWitt, ConsistentHistoryIsAnnihilated) {
  random::Engine rng(15);
  for (int i = 0; i < 5; ++i) {
    const EvolutionSpec<double> spec = random::closed_step_sequence<double>(rng, 2, 5);
    const auto h = build_history_state(sample_haar_state<double>(2, rng), spec);
    const Matrix j = wheeler_dewitt_generator(spec);
    EXPECT_LT((j * h.amplitudes()).norm(), 1e-8);
    Eigen::SelfAdjointEigenSolver<Matrix> es(j);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LT(es.eigenvalues().maxCoeff(), 2 * kPi);
  }
}

TEST(ClockMomentum, GeneratesTheShift) {
  for (Index n : {1, 2, 5, 8}) {
    EXPECT_LT(max_abs_diff(hermitian_expm(clock_momentum<double>(n), 1.0), clock_shift<double>(n)), 1e-12);
  }
}

TEST(ClockMomentum, SingleTickIsZero) {
  EXPECT_LT(max_abs(clock_momentum<double>(1)), 1e-15);
}

TEST(ClockMomentum, FourTickSpectrum) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(clock_momentum<double>(4));
  const Real ev = es.eigenvalues();
  for (Index k = 0; k < 4; ++k) EXPECT_NEAR(ev(k), kPi * k / 2, 1e-12);
}

TEST(Schrodinger, GridSpectrumSolvesDiscreteEquation) {
  const Index n = 8;
  const Matrix hs = grid_energies({0, 1}, n).cast<C>().asDiagonal();
  const EvolutionSpec<double> spec = ConstantHamiltonian<double>{hs, n, std::nullopt};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto h = build_history_state(haar_state<double>(2, seed), spec);
    EXPECT_LT(discrete_schrodinger_residual(h, hs), 1e-8);
  }
}

TEST(Schrodinger, ZeroHamiltonian) {
  const Matrix hs = Matrix::Zero(3, 3);
  const auto h = build_history_state(haar_state<double>(3, 2), EvolutionSpec<double>(ConstantHamiltonian<double>{hs, 5, std::nullopt}));
  EXPECT_LT(discrete_schrodinger_residual(h, hs), 1e-10);
}

TEST(Schrodinger, OffGridSpectrumFails) {
  Real e(2);
  e << 0.0, 0.37;
  const Matrix hs = e.cast<C>().asDiagonal();
  Vector s(2);
  s << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const auto h = build_history_state(s, EvolutionSpec<double>(ConstantHamiltonian<double>{hs, 8, std::nullopt}));
  EXPECT_GT(discrete_schrodinger_residual(h, hs), 1e-3);
}

TEST(SpecialBasis, ReconstructsRandomHistories) {
  random::Engine rng(16);
  const Index d = 3;
  const Index n = 9;
  const EvolutionSpec<double> spec = random::step_sequence<double>(rng, d, n);
  const auto h = build_history_state(sample_haar_state<double>(d, rng), spec);
  const auto rep = special_clock_basis(h);
  EXPECT_LT((rep.reconstruct() - h.amplitudes()).norm(), 1e-10);
  EXPECT_LT(max_abs_diff(rep.tau_basis.adjoint() * rep.tau_basis, Matrix::Identity(n, n)), 1e-12);
  const Matrix a = h.amplitude_matrix();
  for (Index tau = 0; tau < n; ++tau) {
    const Vector projected = std::sqrt(double(n)) * (a * rep.tau_basis.col(tau).conjugate());
    EXPECT_LT((projected - rep.evolved_seed(tau)).norm(), 1e-10);
  }
}

TEST(SpecialBasis, ContiguousGridSpectrumIsRecovered) {
  random::Engine rng(17);
  const Index n = 7;
  const Real e = grid_energies({0, 1, 2}, n);
  const Matrix v = sample_haar_unitary<double>(3, rng);
  const EvolutionSpec<double> spec = ConstantHamiltonian<double>::from_spectrum(e, v, n);
  Vector s(3);
  s << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const auto h = build_history_state(Vector(v * s), spec);
  const auto rep = special_clock_basis(h);
  ASSERT_EQ(rep.k_assignment.size(), 3u);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.effective_hamiltonian);
  Real got = es.eigenvalues();
  std::sort(got.data(), got.data() + got.size());
  for (Index k = 0; k < 3; ++k) EXPECT_NEAR(got(k), e(k), 1e-10);
}

TEST(SpecialBasis, ProductHistoryHasZeroHamiltonian) {
  const Index n = 5;
  const EvolutionSpec<double> spec = StepSequence<double>{std::vector<Matrix>(n, Matrix::Identity(2, 2))};
  const auto h = build_history_state(haar_state<double>(2, 3), spec);
  const auto rep = special_clock_basis(h);
  EXPECT_EQ(rep.k_assignment.size(), 1u);
  EXPECT_LT(max_abs(rep.effective_hamiltonian), 1e-12);
  EXPECT_LT((rep.reconstruct() - h.amplitudes()).norm(), 1e-12);
}

TEST(Property, SpecialBasisReconstruction) {
  random::Engine rng(18);
  for (int i = 0; i < 100; ++i) {
    const Index d = random::uniform_index(rng, 1, 6);
    const Index n = random::uniform_index(rng, 1, 16);
    const EvolutionSpec<double> spec = random::step_sequence<double>(rng, d, n);
    const auto h = build_history_state(sample_haar_state<double>(d, rng), spec);
    EXPECT_LT((special_clock_basis(h).reconstruct() - h.amplitudes()).norm(), 1e-10) << "d = " << d << ", N = " << n;
  }
}

TEST(Conjugate, MaximallyEntangledIsDelta) {
  const Index n = 4;
  Vector s = Vector::Constant(n, 1 / std::sqrt(double(n)));
  const EvolutionSpec<double> spec =
      ConstantHamiltonian<double>::diagonal(grid_energies({0, 1, 2, 3}, n), n);
  const auto h = build_history_state(s, spec);
  const auto rep = conjugate_representation(h);
  EXPECT_NEAR(rep.weights(0), 1.0, 1e-10);
  EXPECT_NEAR(rep.weights.tail(n - 1).sum(), 0.0, 1e-10);
  EXPECT_LT((rep.reconstruct() - h.amplitudes()).norm(), 1e-10);
}

TEST(Conjugate, ProductIsUniform) {
  const Index n = 3;
  const EvolutionSpec<double> spec = StepSequence<double>{std::vector<Matrix>(n, Matrix::Identity(n, n))};
  const auto h = build_history_state(haar_state<double>(n, 9), spec);
  const auto rep = conjugate_representation(h);
  for (Index xi = 0; xi < n; ++xi) EXPECT_NEAR(std::abs(rep.lambda(xi)), 1 / std::sqrt(double(n)), 1e-10);
  EXPECT_LT((rep.reconstruct() - h.amplitudes()).norm(), 1e-10);
}

TEST(Conjugate, RandomHistoryReconstructs) {
  random::Engine rng(19);
  const Index n = 4;
  const EvolutionSpec<double> spec = random::step_sequence<double>(rng, n, n);
  const auto h = build_history_state(sample_haar_state<double>(n, rng), spec);
  const auto rep = conjugate_representation(h);
  EXPECT_LT((rep.reconstruct() - h.amplitudes()).norm(), 1e-10);
  EXPECT_NEAR(rep.weights.sum(), 1.0, 1e-12);
  EXPECT_LT(rep.clock_evolution_residual, 1e-10);
  EXPECT_LT(max_abs_diff(rep.xi_basis.adjoint() * rep.xi_basis, Matrix::Identity(n, n)), 1e-12);
}

TEST(Conjugate, RequiresSquareShape) {
  const auto h = build_history_state(haar_state<double>(2, 1), EvolutionSpec<double>(WeylEvolution{2}));
  expect_errc([&] { conjugate_representation(h); }, Errc::unsupported_shape);
}

}  // namespace
