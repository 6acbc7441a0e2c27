#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace sqm {

/// Number of worker threads used by parallel_for: hardware concurrency by
/// default, overridable once at startup (0 restores the default).
void set_thread_count(int n);
int thread_count();

/// Runs fn(0..n-1), work-stealing over an atomic index. Each index is
/// processed exactly once and results must be written to per-index slots,
/// so the outcome is independent of scheduling. Exceptions from workers are
/// rethrown on the caller.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace sqm
