#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cag/free_word.hpp"

namespace cag {

// The ball B_r of F_k enumerated in shortlex order. Shortlex lists shorter
// words first, so the ball of any smaller radius is a prefix of the word
// list; restriction of anything indexed by ball position is truncation.
class Ball {
public:
  Ball(int rank, int radius);

  // Memoized shared instance.
  static const Ball& of(int rank, int radius);

  // Closed-form cardinality 1 + sum_{i<=r} 2k (2k-1)^(i-1), saturating.
  static std::size_t cardinality(int rank, int radius);

  int rank() const { return rank_; }
  int radius() const { return radius_; }
  std::size_t size() const { return words_.size(); }
  std::size_t size_at(int radius) const;

  const std::vector<FreeWord>& words() const { return words_; }
  const FreeWord& word(std::size_t i) const { return words_[i]; }

  std::optional<std::size_t> find(const FreeWord& w) const;
  std::size_t index_of(const FreeWord& w) const;  // throws if absent

private:
  int rank_;
  int radius_;
  std::vector<FreeWord> words_;
  std::vector<std::size_t> level_end_;  // size_at(r) = level_end_[r]
  std::map<FreeWord, std::size_t, ShortlexLess> index_;
};

// All freely reduced words of length <= radius, shortlex ordered.
std::vector<FreeWord> free_ball(int rank, int radius);

}  // namespace cag
