// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace phrect {

/// Process-wide worker count for parallel maps. Results never depend on it;
/// only wall time does.
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n). Iterations must be independent; each writes
/// only its own slot, so the result is identical for any worker count.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace phrect
