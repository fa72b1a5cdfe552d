#include "cag/ball.hpp"

#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

Ball::Ball(int rank, int radius) : rank_(rank), radius_(radius) {
  if (rank < 1 || rank > 26) {
    throw std::invalid_argument("rank must be in 1..26");
  }
  if (radius < 0) {
    throw std::invalid_argument("radius must be nonnegative");
  }
  check_cap(cardinality(rank, radius), "free ball");

  words_.push_back(FreeWord{});
  level_end_.push_back(1);

  // Letters in canonical order a, a^-1, b, b^-1, ...
  std::vector<int> alphabet;
  for (int g = 1; g <= rank; ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }

  std::size_t level_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    std::size_t level_stop = words_.size();
    for (std::size_t i = level_begin; i < level_stop; ++i) {
      for (int letter : alphabet) {
        const auto& parent = words_[i].letters();
        if (!parent.empty() && parent.back() == -letter) {
          continue;  // would cancel, the shorter word is already listed
        }
        words_.push_back(words_[i] * FreeWord::generator(letter < 0 ? -letter : letter,
                                                         letter < 0));
      }
    }
    level_begin = level_stop;
    level_end_.push_back(words_.size());
  }

  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], i);
  }
}

const Ball& Ball::of(int rank, int radius) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Ball>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(rank, radius);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Ball>(rank, radius)).first;
  }
  return *it->second;
}

std::size_t Ball::cardinality(int rank, int radius) {
  const std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  std::size_t level = 1;
  const std::size_t degree = 2 * static_cast<std::size_t>(rank);
  for (int r = 1; r <= radius; ++r) {
    std::size_t factor = (r == 1) ? degree : degree - 1;
    if (level > kMax / factor) {
      return kMax;
    }
    level *= factor;
    if (total > kMax - level) {
      return kMax;
    }
    total += level;
  }
  return total;
}

std::size_t Ball::size_at(int radius) const {
  if (radius < 0 || radius > radius_) {
    throw std::invalid_argument("radius outside ball");
  }
  return level_end_[static_cast<std::size_t>(radius)];
}

std::optional<std::size_t> Ball::find(const FreeWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t Ball::index_of(const FreeWord& w) const {
  auto i = find(w);
  if (!i) {
    throw std::invalid_argument("word " + w.str() + " outside ball of radius " +
                                std::to_string(radius_));
  }
  return *i;
}

std::vector<FreeWord> free_ball(int rank, int radius) {
  return Ball::of(rank, radius).words();
}

}  // namespace cag
