#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cag/cellular_automaton.hpp"
#include "cag/linear_ca.hpp"
#include "cag/marked_group.hpp"
#include "cag/shift_space.hpp"

namespace cag {

// Position-based local rule of a rank-1 automaton: a window of 2m+1 symbols
// at positions -m..m (leftmost most significant) to one output symbol.
struct SlidingRule {
  int alphabet = 2;
  int radius = 0;
  std::vector<std::uint8_t> table;  // alphabet^(2m+1)

  static SlidingRule from_ca(const CellularAutomaton& tau);
};

// Overlap graph of the q^(2m) words of length 2m; every node has q out-edges
// and the edge labels carry the automaton output on the spanned window.
struct DeBruijnGraph {
  int alphabet = 2;
  int half_window = 0;  // m
  std::vector<std::uint8_t> edge_label;  // index node * q + appended symbol

  static DeBruijnGraph from_ca(const CellularAutomaton& tau);

  std::size_t node_count() const;
  std::size_t successor(std::size_t node, int symbol) const;
  std::uint8_t label(std::size_t node, int symbol) const {
    return edge_label[node * static_cast<std::size_t>(alphabet) +
                      static_cast<std::size_t>(symbol)];
  }
};

// Exact surjectivity of tau : A^Z -> A^Z, decided by determinizing the
// output-labeled de Bruijn graph: the image language is full iff the empty
// state set is unreachable from the full one. Requires rank 1, memory
// radius <= 3, alphabet <= 4.
bool is_surjective_1d(const CellularAutomaton& tau);

// Exact injectivity on bi-infinite configurations, decided on the
// matching-output pair graph over unordered node pairs: injective iff no
// non-diagonal pair lies on a cycle, nor on a path from a diagonal cycle
// to a diagonal cycle.
bool is_injective_1d(const CellularAutomaton& tau);

enum class OracleProperty { Injective, Surjective };

// Independent brute-force oracle over periodic configurations:
//   Injective  - no two distinct configurations of any period n <= max_period
//                share an image;
//   Surjective - every configuration of period n <= max_period has a
//                preimage in A^Z (exact per-point preimage search).
bool periodic_oracle(const CellularAutomaton& tau, OracleProperty property,
                     int max_period);

// Does the periodic point y have any preimage under tau? Exact: searches for
// a cycle in the phase product of the de Bruijn graph with Z/period.
bool has_preimage(const CellularAutomaton& tau,
                  const PeriodicConfiguration& y);

// Two distinct same-period configurations with equal images, if any exist
// at period <= max_period.
std::optional<std::pair<PeriodicConfiguration, PeriodicConfiguration>>
periodic_collision(const CellularAutomaton& tau, int max_period);

// The moduli feeding the injectivity-transfer radius: the memory radius m
// (continuity modulus t -> t+m), the embedding radius (smallest w such that
// image agreement on B_w between points of Y forces agreement at the
// origin) and the expansivity radius, which is 0 for every shift.
struct ModulusProfile {
  int memory_radius = 0;
  int embedding_radius = 0;
  static constexpr int expansivity_radius = 0;
};

// The transfer entourage radius: with ultrametric base entourages the proof
// chain collapses to S = V_0, T = U = V_w0, E = V_(w0+m), V = S n E, giving
// v = w0 + m.
int gromov_radius(const ModulusProfile& profile);

// A subshift of A^Z that is either the full shift or a finite union of
// orbits of periodic points; the shapes the embedding search and transfer
// check operate on.
struct YSpec {
  bool full = false;
  int alphabet = 2;
  std::vector<PeriodicConfiguration> points;  // minimal forms, deduplicated

  static YSpec full_shift(int alphabet);
  static YSpec fix(int period, int alphabet);  // all period-periodic points
  static YSpec orbits(int alphabet, const std::vector<PeriodicConfiguration>& base);

  std::string describe() const;

  // pi_radius of the family.
  WindowSet projection(int radius) const;
};

// Exact injectivity of the restriction of tau to Y.
bool injective_on(const CellularAutomaton& tau, const YSpec& y);

// Smallest w <= cap such that image agreement on B_w between points of Y
// forces agreement at the origin; nullopt when none exists within the cap.
std::optional<int> embedding_radius(const CellularAutomaton& tau,
                                    const YSpec& y, int cap = 8);

std::optional<ModulusProfile> modulus_profile(const CellularAutomaton& tau,
                                              const YSpec& y, int cap = 8);

struct TransferEntry {
  PeriodicConfiguration representative;  // least rotation of minimal form
  int period = 1;
  bool contained = false;
  bool injective = false;  // meaningful only when contained
  std::string note;
};

struct TransferReport {
  bool precondition_injective = false;
  ModulusProfile profile;
  int radius = 0;
  std::string subshift;
  std::vector<TransferEntry> entries;
  std::size_t family_points = 0;
  bool transfer_holds = false;

  std::string to_json() const;
  std::string to_table() const;
};

// Realization of the injectivity transfer: every shift-invariant union of
// periodic orbits (period <= max_period) whose radius-v windows embed in
// pi_v(Y) must inherit injectivity of tau. The maximal contained family is
// checked, which covers every smaller union.
TransferReport injectivity_transfer_check(const CellularAutomaton& tau,
                                          const YSpec& y, int max_period,
                                          int embedding_cap = 8);

struct ConvergenceStage {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ConvergenceReport {
  std::string rule;
  std::string limit;
  bool tau_injective = false;
  bool downgraded = false;
  std::vector<ConvergenceStage> stages;
  std::string final_verdict;

  bool all_passed() const;
  std::string to_json() const;
  std::string to_table() const;
};

// The five-stage convergence experiment along a sequence of finite marked
// quotients G_i converging to G: (1) marked distances nondecreasing,
// (2) fix-window agreement bounded below by half the marked radius,
// (3) window-scale invariance of each Fix(N_i) under the pulled-back
// automaton, (4) surjunctivity of every restriction, (5) independent
// surjectivity of tau on the limit. When kernel is non-null the linear
// rank route decides stage 4.
ConvergenceReport convergence_experiment(
    const std::vector<MarkedGroup>& sequence, const MarkedGroup& limit,
    const CellularAutomaton& tau, int rmax,
    const LinearKernel* kernel = nullptr);

// Scalar kernels are ordinary automata over the alphabet {0..p-1}.
CellularAutomaton kernel_to_ca(const LinearKernel& kernel);

}  // namespace cag
