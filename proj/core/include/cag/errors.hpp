#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cag {

// Raised when an enumeration would exceed the active resource cap.
class CapExceeded : public std::runtime_error {
public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t limit)
      : std::runtime_error(what + ": " + std::to_string(requested) +
                           " items exceed cap " + std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const { return requested_; }
  std::size_t limit() const { return limit_; }

private:
  std::size_t requested_;
  std::size_t limit_;
};

// Malformed file or textual value.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Rule synthesis found two inputs that agree on the probe ball but produce
// different symbols at the origin, so no rule of that radius exists.
class NotLocal : public std::runtime_error {
public:
  explicit NotLocal(int radius)
      : std::runtime_error("no local rule of radius " + std::to_string(radius) +
                           " reproduces the map"),
        radius_(radius) {}

  int radius() const { return radius_; }

private:
  int radius_;
};

// Rule synthesis detected a shift-equivariance violation in its input map.
class NotEquivariant : public std::runtime_error {
public:
  NotEquivariant() : std::runtime_error("map is not shift-equivariant") {}
};

// Inverse requested for a rank-deficient linear kernel.
class NotInvertible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// stable_finiteness_witness precondition L*M = I (or M*L = I) failed.
class NotOneSidedInverse : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cag
