#pragma once

#include <string>

namespace cag {

// Exact integer surrogate for the ultrametric distance 2^-r between two
// objects compared window by window: Exactly(r) means they agree at every
// radius <= r and disagree at r+1; AtLeast(r) means agreement was verified
// through the whole search range.
struct AgreementRadius {
  enum class Kind { Exactly, AtLeast };

  Kind kind = Kind::Exactly;
  int radius = 0;

  static AgreementRadius exactly(int r) { return {Kind::Exactly, r}; }
  static AgreementRadius at_least(int r) { return {Kind::AtLeast, r}; }

  bool is_exact() const { return kind == Kind::Exactly; }
  int lower_bound() const { return radius; }

  std::string str() const;

  // 2^-r rendered as a decimal; display only, never used in comparisons.
  double displayed_distance() const;

  bool operator==(const AgreementRadius&) const = default;
};

}  // namespace cag
