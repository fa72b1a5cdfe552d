#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cag/linear_ca.hpp"
#include "cag/marked_group.hpp"

namespace cag {

// An element of F_p[G] for a finite marked group: one coefficient per group
// element, reduced mod p.
struct GroupAlgebraElement {
  int prime = 2;
  std::vector<std::uint8_t> coeff;  // indexed by element

  static GroupAlgebraElement zero(int prime, const MarkedGroup& g);
  static GroupAlgebraElement unit(int prime, const MarkedGroup& g,
                                  std::size_t element);

  bool is_zero() const;

  bool operator==(const GroupAlgebraElement&) const = default;
};

GroupAlgebraElement ga_add(const GroupAlgebraElement& a,
                           const GroupAlgebraElement& b);
GroupAlgebraElement ga_mul(const MarkedGroup& g, const GroupAlgebraElement& a,
                           const GroupAlgebraElement& b);

// A square matrix over F_p[G].
struct GroupAlgebraMatrix {
  int prime = 2;
  std::size_t size = 1;
  std::vector<GroupAlgebraElement> entries;  // row-major size*size

  static GroupAlgebraMatrix identity(int prime, const MarkedGroup& g,
                                     std::size_t size);

  const GroupAlgebraElement& at(std::size_t i, std::size_t j) const {
    return entries[i * size + j];
  }
  GroupAlgebraElement& at(std::size_t i, std::size_t j) {
    return entries[i * size + j];
  }

  void save(std::ostream& out) const;
  static GroupAlgebraMatrix load(std::istream& in, const MarkedGroup& g);

  bool operator==(const GroupAlgebraMatrix&) const = default;
};

GroupAlgebraMatrix ga_mat_mul(const MarkedGroup& g,
                              const GroupAlgebraMatrix& a,
                              const GroupAlgebraMatrix& b);
bool ga_mat_is_identity(const MarkedGroup& g, const GroupAlgebraMatrix& m);

// Faithful embedding of F_p[G]^(l x l) into (|G| l)-dimensional matrices
// over F_p by the left regular representation.
FpMatrix regular_representation(const MarkedGroup& g,
                                const GroupAlgebraMatrix& m);

enum class InverseSide { Left, Right };

struct StableFinitenessResult {
  bool confirmed = false;
  GroupAlgebraMatrix two_sided_inverse;
};

// Checks the one-sided identity (L M = I for Left, M L = I for Right) by
// direct group-algebra arithmetic, then confirms the opposite product is
// the identity through the regular representation. Returns L as the
// two-sided inverse; throws NotOneSidedInverse when the precondition fails.
StableFinitenessResult stable_finiteness_witness(const MarkedGroup& g,
                                                 const GroupAlgebraMatrix& m,
                                                 const GroupAlgebraMatrix& l,
                                                 InverseSide side);

}  // namespace cag
