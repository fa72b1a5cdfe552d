#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cag/ball.hpp"
#include "cag/free_word.hpp"

namespace cag {

// A labeling of the ball B_r of F_k by alphabet symbols, stored in shortlex
// ball order. Because smaller balls are prefixes of larger ones, restriction
// is truncation.
struct WindowPattern {
  int rank = 1;
  int radius = 0;
  std::vector<std::uint8_t> labels;

  static WindowPattern constant(int rank, int radius, std::uint8_t symbol);

  std::uint8_t at(const FreeWord& w) const;
  WindowPattern restricted(int radius2) const;

  bool operator==(const WindowPattern&) const = default;
};

// Lexicographic order on the label vector; the canonical pattern order.
bool pattern_less(const WindowPattern& a, const WindowPattern& b);

// A finite set of same-radius patterns in canonical order, e.g. the
// projection pi_r(Y) of a subshift Y.
class WindowSet {
public:
  WindowSet(int rank, int radius, int alphabet);

  static WindowSet from_patterns(int rank, int radius, int alphabet,
                                 std::vector<WindowPattern> patterns);
  // pi_r of the full shift: every labeling of the ball.
  static WindowSet all_patterns(int rank, int radius, int alphabet);

  int rank() const { return rank_; }
  int radius() const { return radius_; }
  int alphabet() const { return alphabet_; }
  const std::vector<WindowPattern>& patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }

  bool contains(const WindowPattern& p) const;
  WindowSet restricted(int radius2) const;
  WindowSet union_with(const WindowSet& other) const;
  bool subset_of(const WindowSet& other) const;

  bool operator==(const WindowSet&) const = default;

private:
  int rank_;
  int radius_;
  int alphabet_;
  std::vector<WindowPattern> patterns_;  // sorted by pattern_less, unique
};

// (Y,Z) lies in the Hausdorff-Bourbaki entourage induced by the base
// entourage V_r exactly when the radius-r projections coincide as sets;
// this function decides that equality. Radius mismatch is an error.
bool window_entourage_check(const WindowSet& p, const WindowSet& q);

// Entourage preservation of the union map: whenever the two input pairs
// are entourage-related, so is the pair of unions. Returns the implication,
// which is a theorem; a false return signals an implementation bug.
bool hb_union_property_check(const WindowSet& y1, const WindowSet& y2,
                             const WindowSet& z1, const WindowSet& z2);

// Image of a pattern set under a window map that loses `modulus` radii,
// e.g. one application of a cellular automaton with memory radius m.
WindowSet pushforward_window(
    const WindowSet& p, int modulus,
    const std::function<WindowPattern(const WindowPattern&)>& f);

// CSV dump: header row of ball words in shortlex order, then one pattern
// per row in canonical order.
void dump_window_csv(std::ostream& out, const WindowSet& set);
WindowSet parse_window_csv(std::istream& in, int rank, int alphabet);

}  // namespace cag
