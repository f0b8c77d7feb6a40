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

#ifndef HISTCLOCK_RANDOM_HPP
#define HISTCLOCK_RANDOM_HPP

#include <random>
#include <vector>

#include "histclock/entanglement.hpp"
#include "histclock/history.hpp"
#include "histclock/linalg.hpp"

// Random instance generators shared by the tests, the verify command and the
// acceptance suite.

namespace histclock::random {

using Engine = std::mt19937_64;

inline Index uniform_index(Engine& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

template <typename Real = double>
Real uniform_real(Engine& rng, Real lo, Real hi) {
  return std::uniform_real_distribution<Real>(lo, hi)(rng);
}

/// Probability vector drawn uniformly from the simplex.
template <typename Real = double>
std::vector<Real> simplex_weights(Engine& rng, Index levels) {
  std::exponential_distribution<Real> ex(Real(1));
  std::vector<Real> w(static_cast<std::size_t>(levels));
  Real total = 0;
  for (auto& x : w) total += (x = ex(rng));
  for (auto& x : w) x /= total;
  return w;
}

/// Energies uniform in [lo, hi] with simplex weights.
template <typename Real = double>
SpectralWeights<Real> spectral_weights(Engine& rng, Index levels, Real lo, Real hi) {
  std::vector<Real> e(static_cast<std::size_t>(levels));
  for (auto& x : e) x = uniform_real<Real>(rng, lo, hi);
  return SpectralWeights<Real>::make(std::move(e), simplex_weights<Real>(rng, levels), 1e-12, 1e-10);
}

template <typename Real = double>
ComplexMatrix<Real> hermitian(Engine& rng, Index d, Real scale = Real(1)) {
  std::normal_distribution<Real> g;
  ComplexMatrix<Real> a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = Complex<Real>(g(rng), g(rng));
  }
  return scale * (a + a.adjoint()) / Real(2);
}

template <typename Real = double>
StepSequence<Real> step_sequence(Engine& rng, Index d, Index n) {
  StepSequence<Real> s;
  for (Index t = 0; t < n; ++t) s.steps.push_back(sample_haar_unitary<Real>(d, rng));
  return s;
}

/// Random step sequence whose last step closes the cycle exactly.
template <typename Real = double>
StepSequence<Real> closed_step_sequence(Engine& rng, Index d, Index n) {
  StepSequence<Real> s;
  ComplexMatrix<Real> total = ComplexMatrix<Real>::Identity(d, d);
  for (Index t = 0; t + 1 < n; ++t) {
    s.steps.push_back(sample_haar_unitary<Real>(d, rng));
    total = s.steps.back() * total;
  }
  s.steps.push_back(total.adjoint());
  return s;
}

/// Constant Hamiltonian with a Haar eigenbasis and the given spectrum.
template <typename Real = double>
ConstantHamiltonian<Real> constant_hamiltonian(Engine& rng, const RealVector<Real>& energies, Index steps,
                                               std::optional<Real> tf = std::nullopt) {
  const ComplexMatrix<Real> v = sample_haar_unitary<Real>(energies.size(), rng);
  return ConstantHamiltonian<Real>::from_spectrum(energies, v, steps, tf);
}

}  // namespace histclock::random

#endif  // HISTCLOCK_RANDOM_HPP
