#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cag/free_word.hpp"
#include "cag/marked_group.hpp"
#include "cag/shift_space.hpp"
#include "cag/window.hpp"

namespace cag {

// A cellular automaton given by an ordered memory set of free words
// S = (s_1..s_d) and a total rule table mapping symbol tuples to symbols:
// tau(x)(g) = rule((x(g s_i))_i). The table is indexed with the first
// memory word most significant, i.e. rows of the rule file appear in
// lexicographic tuple order.
class CellularAutomaton {
public:
  CellularAutomaton(int rank, int alphabet, std::vector<FreeWord> memory,
                    std::vector<std::uint8_t> table);

  static CellularAutomaton identity(int rank, int alphabet);
  static CellularAutomaton constant(int rank, int alphabet,
                                    std::uint8_t symbol);
  // Elementary CA: rank 1, alphabet 2, memory (a^-1, e, a), Wolfram code.
  static CellularAutomaton eca(int code);

  int rank() const { return rank_; }
  int alphabet() const { return alphabet_; }
  const std::vector<FreeWord>& memory() const { return memory_; }
  const std::vector<std::uint8_t>& table() const { return table_; }
  std::size_t arity() const { return memory_.size(); }

  // Longest memory word; the continuity modulus is r -> r + memory_radius.
  int memory_radius() const;

  std::uint8_t local(const std::vector<std::uint8_t>& tuple) const;

  PeriodicConfiguration apply(const PeriodicConfiguration& x) const;
  FiniteConfiguration apply(const FiniteConfiguration& x) const;

  // Window action: out(w) = rule((p(w s_i))_i) for |w| <= out_radius;
  // needs p.radius >= out_radius + memory_radius().
  WindowPattern window_apply(const WindowPattern& p, int out_radius) const;

  // Adapter for pushforward_window.
  std::function<WindowPattern(const WindowPattern&)> window_map(
      int out_radius) const;

  void save(std::ostream& out) const;
  static CellularAutomaton load(std::istream& in);

private:
  int rank_;
  int alphabet_;
  std::vector<FreeWord> memory_;
  std::vector<std::uint8_t> table_;
};

// Composition outer after inner, with memory {reduce(s t)} over s in the
// outer memory and t in the inner memory, deduplicated and shortlex sorted.
// Extensionally equal to applying inner first, then outer.
CellularAutomaton ca_compose(const CellularAutomaton& outer,
                             const CellularAutomaton& inner);

// Replaces memory words by their shortlex-least lifts through the quotient,
// merging words with equal image; the action on configurations over g is
// unchanged.
CellularAutomaton canonicalize_over(const CellularAutomaton& tau,
                                    const MarkedGroup& g);

// The conjugate tau^* = rho^* tau (rho^*)^-1 on Fix(N): same rule table,
// memory lifted to shortlex-least preimage words. The memory of tau must
// have pairwise distinct images in g (canonicalize_over first otherwise).
CellularAutomaton pullback_ca(const CellularAutomaton& tau,
                              const MarkedGroup& g);

// Equality as maps on the full shift, decided on every pattern of the
// common memory radius.
bool extensionally_equal(const CellularAutomaton& a,
                         const CellularAutomaton& b);

// Equality as maps on Fix(N), compared on fix windows down to the given
// output radius.
bool equal_on_fix(const CellularAutomaton& a, const CellularAutomaton& b,
                  const MarkedGroup& g, int out_radius);

// Recovers a cellular automaton from a black-box map given only through its
// radius-source_radius window observable. Searches the least radius
// t <= bound whose ball supports a consistent rule, then drops memory words
// the rule does not depend on. Throws NotLocal(bound) when no such radius
// exists.
CellularAutomaton synthesize_from_window_map(
    int rank, int alphabet, int source_radius,
    const std::function<std::uint8_t(const WindowPattern&)>& f, int bound,
    std::uint8_t fill = 0);

// Same, for a map given as a black-box self-map of A^(Z/period). Checks
// shift equivariance first (throws NotEquivariant), then searches the least
// radius as above. Rule entries never observed through period-n
// configurations are filled with `fill`.
CellularAutomaton synthesize_from_periodic_map(
    int alphabet, int period,
    const std::function<PeriodicConfiguration(const PeriodicConfiguration&)>& f,
    int bound, std::uint8_t fill = 0);

}  // namespace cag
