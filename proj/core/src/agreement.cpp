#include "cag/agreement.hpp"

#include <cmath>

namespace cag {

std::string AgreementRadius::str() const {
  if (kind == Kind::Exactly) {
    return "exactly " + std::to_string(radius);
  }
  return "at least " + std::to_string(radius);
}

double AgreementRadius::displayed_distance() const {
  return std::ldexp(1.0, -radius);
}

}  // namespace cag
