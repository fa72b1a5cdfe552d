#include "cag/resource.hpp"

#include "cag/errors.hpp"

namespace cag {

ResourceLimits& global_limits() {
  static ResourceLimits limits;
  return limits;
}

void check_cap(std::size_t count, const char* what) {
  const std::size_t limit = global_limits().max_items;
  if (count > limit) {
    throw CapExceeded(what, count, limit);
  }
}

}  // namespace cag
