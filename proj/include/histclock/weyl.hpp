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

#ifndef HISTCLOCK_WEYL_HPP
#define HISTCLOCK_WEYL_HPP

#include <vector>

#include "histclock/linalg.hpp"

namespace histclock {

/// exp(i 2 pi Q / d) with Q|q> = q|q>: the clock matrix diag(e^{i 2 pi q / d}).
template <typename Real = double>
ComplexMatrix<Real> weyl_clock(Index d) {
  detail::require(d >= 2, Errc::invalid_dimension, "Weyl operators need d >= 2");
  ComplexMatrix<Real> z = ComplexMatrix<Real>::Zero(d, d);
  for (Index q = 0; q < d; ++q) z(q, q) = std::polar(Real(1), two_pi<Real> * Real(q) / Real(d));
  return z;
}

/// exp(-i 2 pi P / d) with P diagonal in the DFT basis. It acts as the cyclic
/// shift |q> -> |q + 1 mod d>, which is how it is built here.
template <typename Real = double>
ComplexMatrix<Real> weyl_shift(Index d) {
  detail::require(d >= 2, Errc::invalid_dimension, "Weyl operators need d >= 2");
  ComplexMatrix<Real> x = ComplexMatrix<Real>::Zero(d, d);
  for (Index q = 0; q < d; ++q) x((q + 1) % d, q) = Real(1);
  return x;
}

/// The d^2 Weyl operators U_pq = Z^p X^q, listed by t = q d + p.
template <typename Real = double>
std::vector<ComplexMatrix<Real>> weyl_set(Index d) {
  const ComplexMatrix<Real> z = weyl_clock<Real>(d);
  const ComplexMatrix<Real> x = weyl_shift<Real>(d);
  std::vector<ComplexMatrix<Real>> set;
  set.reserve(static_cast<std::size_t>(d * d));
  ComplexMatrix<Real> xq = ComplexMatrix<Real>::Identity(d, d);
  for (Index q = 0; q < d; ++q) {
    ComplexMatrix<Real> u = xq;
    for (Index p = 0; p < d; ++p) {
      set.push_back(u);
      u = z * u;
    }
    xq = x * xq;
  }
  return set;
}

/// Step unitaries U_{t,t-1}, t = 1..d^2, that walk through weyl_set(d): the
/// clock matrix Z except at t = m d, where X Z is applied. The last entry is
/// the cyclic step back to t = 0.
template <typename Real = double>
std::vector<ComplexMatrix<Real>> weyl_step_list(Index d) {
  const ComplexMatrix<Real> z = weyl_clock<Real>(d);
  const ComplexMatrix<Real> xz = weyl_shift<Real>(d) * z;
  std::vector<ComplexMatrix<Real>> steps;
  steps.reserve(static_cast<std::size_t>(d * d));
  for (Index t = 1; t <= d * d; ++t) steps.push_back(t % d == 0 ? xz : z);
  return steps;
}

}  // namespace histclock

#endif  // HISTCLOCK_WEYL_HPP
