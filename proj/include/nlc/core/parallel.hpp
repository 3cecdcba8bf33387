#pragma once

#include <cstddef>
#include <functional>

namespace nlc {

// Worker count used by parallel_for; 0 selects hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n) over contiguous static chunks. Each index is
// visited exactly once, so results never depend on the worker count as long
// as body writes only to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace nlc
