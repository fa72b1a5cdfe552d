#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cag {

// A freely reduced word over the generators of a free group F_k.
// Letters are nonzero signed generator indices: +i is the i-th generator,
// -i its inverse. The empty word is the identity.
class FreeWord {
public:
  FreeWord() = default;

  static FreeWord generator(int index, bool inverted = false);

  // Concatenates the given letters and freely reduces the result.
  static FreeWord from_letters(const std::vector<int>& letters);

  // Accepts "e" (identity) or a string over a..z (generators 1..26) and
  // A..Z (their inverses); the input need not be reduced.
  static FreeWord parse(std::string_view text);

  const std::vector<std::int8_t>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  // Largest generator index occurring in the word (0 for the identity).
  int max_generator() const;

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& rhs) const;

  // Exponent sum per generator, i.e. the image in Z^d (d >= max_generator).
  std::vector<std::int64_t> exponent_vector(int dimensions) const;
  // Total exponent sum of generator 1; the evaluation in Z for rank 1.
  std::int64_t exponent_sum() const;

  std::string str() const;

  bool operator==(const FreeWord&) const = default;

private:
  std::vector<std::int8_t> letters_;
};

// Canonical letter order a < a^-1 < b < b^-1 < ...
int letter_rank(int letter);

// Length-then-lexicographic order; the canonical word order used for ball
// enumeration, memory sets and lift selection.
bool shortlex_less(const FreeWord& a, const FreeWord& b);

struct ShortlexLess {
  bool operator()(const FreeWord& a, const FreeWord& b) const {
    return shortlex_less(a, b);
  }
};

}  // namespace cag
