// Copyright 2026 The qsl Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsl/run.hpp"

namespace qsl {

/// Haar-ish random unitary: QR of a Ginibre matrix with the R diagonal
/// phases folded into Q.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::size_t samples = 0;
  /// Worst measured deviation (meaning depends on the check; see detail).
  double worst = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 12345;
  /// full raises the sample counts; the fast profile stays under a few
  /// seconds on one core.
  bool full = false;
  Exec exec = Exec::Parallel;
};

/// Runs every named property check, one CheckResult each, deterministic
/// for a given seed. Checks never throw; failures are recorded.
std::vector<CheckResult> run_checks(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qsl
