#pragma once

#include <functional>

namespace gkz {

// Global worker cap for the OpenMP kernels; 1 means serial. Defaults to the
// OpenMP runtime's choice when compiled with OpenMP, otherwise 1.
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [0, n). Iterations must be independent; callers sort
// any collected results canonically afterwards so scheduling never shows.
// If iterations throw, the exception from the lowest index is rethrown.
void parallel_for(long n, const std::function<void(long)>& fn);

// Always-serial reference path with the same contract.
void serial_for(long n, const std::function<void(long)>& fn);

}  // namespace gkz
