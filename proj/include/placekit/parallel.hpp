#pragma once

#include <functional>

namespace placekit {

// Worker cap: PLACEKIT_THREADS when set, hardware concurrency otherwise.
int max_threads();

// Runs fn(0..n-1) across up to max_threads() workers. fn must be pure with
// respect to shared state apart from its own output slot.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace placekit
