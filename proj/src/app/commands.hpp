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

#ifndef HISTCLOCK_APP_COMMANDS_HPP
#define HISTCLOCK_APP_COMMANDS_HPP

#include "app/config.hpp"
#include "app/report.hpp"

namespace histclock::app {

enum ExitCode : int { kSuccess = 0, kInvariantFailure = 1, kConfigError = 2 };

Report run_simulate(const RunConfig& cfg);
Report run_bounds(const RunConfig& cfg);
Report run_power(const RunConfig& cfg);
Report run_measure(const RunConfig& cfg);

/// Randomized invariant suite seeded by cfg.rng_seed. When the configuration
/// carries an evolution, its spec is checked as well.
Report run_verify(const RunConfig& cfg);

}  // namespace histclock::app

#endif  // HISTCLOCK_APP_COMMANDS_HPP
