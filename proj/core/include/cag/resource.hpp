#pragma once

#include <cstddef>

namespace cag {

// Global cap on the size of any single enumeration (ball words, window
// patterns, automaton states). The cag tool initializes this from the
// CAG_RESOURCE_CAP environment variable.
struct ResourceLimits {
  std::size_t max_items = 1'000'000;
};

ResourceLimits& global_limits();

// Throws CapExceeded when count exceeds the active limit.
void check_cap(std::size_t count, const char* what);

}  // namespace cag
