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

#ifndef HISTCLOCK_COMMON_HPP
#define HISTCLOCK_COMMON_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

namespace histclock {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

/// Dense complex matrix. Operators on the joint system-clock space use the
/// composite index i = q * N + t (system index major, clock index minor).
template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using StateVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
inline constexpr Real two_pi = Real(2) * std::numbers::pi_v<Real>;

enum class Errc {
  invalid_dimension,
  invalid_shape,
  contract_violation,
  unsupported_shape,
  out_of_range,
  invalid_argument,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_dimension: return "invalid dimension";
    case Errc::invalid_shape: return "invalid shape";
    case Errc::contract_violation: return "contract violation";
    case Errc::unsupported_shape: return "unsupported shape";
    case Errc::out_of_range: return "index out of range";
    case Errc::invalid_argument: return "invalid argument";
  }
  return "unknown error";
}

/// Exception type thrown by every library operation on a failed precondition.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

namespace detail {

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace detail

/// Tolerances used when checking contracts on inputs. Results are not
/// rescaled by these; they only gate what counts as "unitary" etc.
struct Tolerances {
  double algebraic = 1e-10;
  double spectral = 1e-8;
  double statistical = 4.0;  // in units of the standard error
  double schmidt_rank = 1e-12;
  double degeneracy = 1e-12;
};

}  // namespace histclock

#endif  // HISTCLOCK_COMMON_HPP
