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

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef QSL_HAS_OPENMP
#include <omp.h>
#endif

namespace qsl {

/// Execution policy for grid-point kernels. Both policies produce
/// bit-identical results: parallel loops only fill independent slots and
/// every reduction is performed serially afterwards.
enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef QSL_HAS_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs fn(i) for i in [0, n). Under Exec::Parallel the iterations run on
/// OpenMP threads; a throwing iteration is captured and the error for the
/// lowest index is rethrown after the loop, matching the serial policy's
/// first-failure behaviour.
template <typename Fn>
void parallel_for(std::ptrdiff_t n, Exec exec, Fn&& fn) {
#ifdef QSL_HAS_OPENMP
  if (exec == Exec::Parallel && n > 1) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

}  // namespace qsl
