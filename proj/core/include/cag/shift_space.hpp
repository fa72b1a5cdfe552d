#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cag/marked_group.hpp"
#include "cag/window.hpp"

namespace cag {

// A configuration in A^Z fixed by nZ, stored as one period.
struct PeriodicConfiguration {
  int alphabet = 2;
  std::vector<std::uint8_t> values;

  int period() const { return static_cast<int>(values.size()); }
  std::uint8_t at(std::int64_t i) const;

  // The same point of A^Z presented with its minimal period.
  PeriodicConfiguration minimal_form() const;
  // Equality as points of A^Z (periods may differ).
  bool same_point(const PeriodicConfiguration& other) const;

  static PeriodicConfiguration parse(std::string_view csv, int alphabet);
  std::string str() const;

  bool operator==(const PeriodicConfiguration&) const = default;
};

// A configuration over a finite quotient, one symbol per element index.
struct FiniteConfiguration {
  MarkedGroup group;
  int alphabet = 2;
  std::vector<std::uint8_t> values;

  bool operator==(const FiniteConfiguration& other) const {
    return alphabet == other.alphabet && values == other.values;
  }
};

// The shift gx(h) = x(g^-1 h).
PeriodicConfiguration shift_act(std::int64_t g, const PeriodicConfiguration& x);
FiniteConfiguration shift_act(std::size_t g, const FiniteConfiguration& x);
FiniteConfiguration shift_act(const FreeWord& g, const FiniteConfiguration& x);

// Ball indices grouped by the oracle image of their words, in order of
// first occurrence. These are the intersections of the cosets of N with
// the ball.
std::vector<std::vector<std::size_t>> coset_classes(const MarkedGroup& g,
                                                    int radius);

// pi_r(Fix(N)): every radius-r pattern constant on the coset classes;
// cardinality alphabet^(number of classes).
WindowSet fix_window(const MarkedGroup& g, int alphabet, int radius);

// rho^*(y) = y o rho evaluated at one word.
std::uint8_t pullback_value(const FiniteConfiguration& y, const FreeWord& w);
// Restriction of rho^*(y) to the ball B_r; a member of fix_window.
WindowPattern pullback_window(const FiniteConfiguration& y, int radius);
// (rho^*)^-1: reads one value per coset from a coset-constant window that
// covers a transversal; errors otherwise.
FiniteConfiguration pullback_inverse(const MarkedGroup& g,
                                     const WindowPattern& p, int alphabet);

}  // namespace cag
