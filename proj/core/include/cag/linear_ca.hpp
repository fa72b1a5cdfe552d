#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "cag/free_word.hpp"
#include "cag/marked_group.hpp"

namespace cag {

// Dense matrix over the prime field F_p, p <= 97. Elimination uses
// deterministic pivoting (first nonzero in column order) so ranks and
// inverses are reproducible.
class FpMatrix {
public:
  FpMatrix(int prime, std::size_t rows, std::size_t cols);

  static FpMatrix identity(int prime, std::size_t n);

  int prime() const { return prime_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint8_t at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, std::uint8_t v) {
    a_[i * cols_ + j] = static_cast<std::uint8_t>(v % prime_);
  }

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix operator+(const FpMatrix& rhs) const;
  bool is_identity() const;
  bool is_zero() const;

  std::size_t rank() const;
  std::optional<FpMatrix> inverse() const;

  bool operator==(const FpMatrix&) const = default;

private:
  int prime_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> a_;
};

// A linear cellular automaton over F_p^n as a finitely supported kernel:
// tau(x)(g) = sum_s M_s x(g s). Normal form keeps the support shortlex
// sorted with no all-zero matrix.
class LinearKernel {
public:
  LinearKernel(int prime, int dim,
               std::vector<std::pair<FreeWord, FpMatrix>> terms);

  static LinearKernel identity(int prime, int dim);
  static LinearKernel zero(int prime, int dim);

  int prime() const { return prime_; }
  int dim() const { return dim_; }
  const std::vector<std::pair<FreeWord, FpMatrix>>& terms() const {
    return terms_;
  }
  int memory_radius() const;

  void save(std::ostream& out) const;
  static LinearKernel load(std::istream& in);

  bool operator==(const LinearKernel&) const = default;

private:
  int prime_;
  int dim_;
  std::vector<std::pair<FreeWord, FpMatrix>> terms_;
};

// Vector-valued configuration: one F_p^n column per site. Over a finite
// group sites are element indices; over Z they are positions mod the period.
struct VectorConfiguration {
  int prime = 2;
  int dim = 1;
  std::vector<std::uint8_t> values;  // sites * dim, site-major

  std::size_t sites() const { return values.size() / std::size_t(dim); }
  bool operator==(const VectorConfiguration&) const = default;
};

VectorConfiguration lin_apply(const LinearKernel& kernel, const MarkedGroup& g,
                              const VectorConfiguration& x);
// Over Z with n-periodic configurations (rank-1 support).
VectorConfiguration lin_apply_periodic(const LinearKernel& kernel,
                                       const VectorConfiguration& x);

// The regular-representation realization: block(g,h) = sum of M_s over
// support words with image g^-1 h; multiplication by this matrix equals
// lin_apply under the canonical element order.
FpMatrix lin_matrix(const LinearKernel& kernel, const MarkedGroup& g);

struct LinDecision {
  std::size_t rank = 0;
  std::size_t size = 0;
  bool injective = false;
  bool surjective = false;

  bool bijective() const { return injective && surjective; }
};

// Rank verdict over a finite quotient. The matrix is square, so injective,
// surjective and full-rank coincide; the operation asserts it never reports
// injective without surjective.
LinDecision lin_decide(const LinearKernel& kernel, const MarkedGroup& g);

// Kernel of the inverse automaton, read off the block row of the inverted
// matrix at the identity; throws NotInvertible when rank-deficient.
LinearKernel lin_inverse_kernel(const LinearKernel& kernel,
                                const MarkedGroup& g);

// Free-group convolution; realizes composition of linear automata.
LinearKernel convolve(const LinearKernel& a, const LinearKernel& b);

}  // namespace cag
