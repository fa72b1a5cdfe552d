#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cag/agreement.hpp"
#include "cag/free_word.hpp"

namespace cag {

// A quotient G = F_k / N presented by a word-problem oracle. The ambient
// group is always free, so a marked group is determined by which reduced
// words evaluate to the identity. Four backends cover every experiment:
// an explicit finite group, Z/n, Z^d and the free group itself (N trivial).
class MarkedGroup {
public:
  enum class Backend { Finite, Cyclic, Zd, Free };

  // Explicit finite group: element 0 is the identity, gen_images[i] is the
  // image of generator i+1 and mul_table is row-major n x n. The generator
  // images must generate the whole group.
  static MarkedGroup finite(int rank, std::size_t order,
                            std::vector<std::size_t> gen_images,
                            std::vector<std::size_t> mul_table);
  static MarkedGroup cyclic(std::uint64_t modulus);  // rank 1, a -> 1 mod n
  static MarkedGroup zd(int dimensions);             // generator i -> e_i
  static MarkedGroup free_group(int rank);           // N = {1}
  static MarkedGroup trivial(int rank);              // one-element quotient

  // Builds a finite backend from permutations of {0..domain-1}; the identity
  // gets index 0 and the remaining elements are numbered in BFS order over
  // shortlex-enumerated products of the generators.
  static MarkedGroup from_permutations(
      std::size_t domain, const std::vector<std::vector<std::size_t>>& gens);

  Backend backend() const { return backend_; }
  int rank() const { return rank_; }
  bool is_finite() const {
    return backend_ == Backend::Finite || backend_ == Backend::Cyclic;
  }
  std::size_t order() const;  // finite backends only

  // Canonical element identifier of the image of w; identifiers are only
  // comparable within one group.
  std::string eval(const FreeWord& w) const;
  bool is_identity(const FreeWord& w) const;

  // Finite-backend element arithmetic, elements indexed 0..order-1 with the
  // identity at 0.
  std::size_t eval_index(const FreeWord& w) const;
  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const;
  std::size_t generator_image(int generator) const;

  // Shortlex-least reduced word evaluating to the given element.
  FreeWord least_lift(std::size_t element) const;

  // Shortlex-least reduced word with the same image as w; works on every
  // backend (for the free backend this is w itself).
  FreeWord canonical_lift(const FreeWord& w) const;

  // Canonical line-oriented description; round-trips through load().
  void save(std::ostream& out) const;
  static MarkedGroup load(std::istream& in);

  std::string describe() const;

private:
  struct FiniteData {
    std::size_t order;
    std::vector<std::size_t> gen_images;
    std::vector<std::size_t> mul_table;
    std::vector<std::size_t> inverse;
    std::vector<FreeWord> lifts;  // shortlex-least word per element
  };
  struct CyclicData {
    std::uint64_t modulus;
  };
  struct ZdData {
    int dimensions;
  };
  struct FreeData {};

  MarkedGroup() : data_(FreeData{}) {}

  Backend backend_ = Backend::Free;
  int rank_ = 1;
  std::variant<FiniteData, CyclicData, ZdData, FreeData> data_;

  const FiniteData& finite_data() const;
};

// { w in B_r : w evaluates to the identity of G }, shortlex ordered.
// This is N intersected with the free ball of the given radius.
std::vector<FreeWord> membership_window(const MarkedGroup& g, int radius);

// Largest radius <= rmax at which the membership windows of the two groups
// coincide at every smaller radius as well; AtLeast(rmax) when they agree
// through the whole range. Requires equal ranks.
AgreementRadius marked_distance(const MarkedGroup& g1, const MarkedGroup& g2,
                                int rmax);

}  // namespace cag
