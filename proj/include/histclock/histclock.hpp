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

#ifndef HISTCLOCK_HISTCLOCK_HPP
#define HISTCLOCK_HISTCLOCK_HPP

#include "histclock/common.hpp"
#include "histclock/entanglement.hpp"
#include "histclock/history.hpp"
#include "histclock/linalg.hpp"
#include "histclock/measurement.hpp"
#include "histclock/opstates.hpp"
#include "histclock/random.hpp"
#include "histclock/weyl.hpp"

#endif  // HISTCLOCK_HISTCLOCK_HPP
