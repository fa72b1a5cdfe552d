#include "cag/window.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  const std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) {
      return kMax;
    }
    r *= base;
  }
  return r;
}

void require_comparable(const WindowSet& p, const WindowSet& q) {
  if (p.rank() != q.rank()) {
    throw std::invalid_argument("window sets have different ranks");
  }
  if (p.alphabet() != q.alphabet()) {
    throw std::invalid_argument("window sets have different alphabets");
  }
  if (p.radius() != q.radius()) {
    throw std::invalid_argument("window sets have different radii");
  }
}

}  // namespace

WindowPattern WindowPattern::constant(int rank, int radius,
                                      std::uint8_t symbol) {
  WindowPattern p;
  p.rank = rank;
  p.radius = radius;
  p.labels.assign(Ball::of(rank, radius).size(), symbol);
  return p;
}

std::uint8_t WindowPattern::at(const FreeWord& w) const {
  return labels[Ball::of(rank, radius).index_of(w)];
}

WindowPattern WindowPattern::restricted(int radius2) const {
  if (radius2 < 0 || radius2 > radius) {
    throw std::invalid_argument("restriction radius outside pattern radius");
  }
  WindowPattern p;
  p.rank = rank;
  p.radius = radius2;
  const std::size_t n = Ball::of(rank, radius).size_at(radius2);
  p.labels.assign(labels.begin(), labels.begin() + static_cast<long>(n));
  return p;
}

bool pattern_less(const WindowPattern& a, const WindowPattern& b) {
  return a.labels < b.labels;
}

WindowSet::WindowSet(int rank, int radius, int alphabet)
    : rank_(rank), radius_(radius), alphabet_(alphabet) {
  if (alphabet < 1 || alphabet > 255) {
    throw std::invalid_argument("alphabet size must be in 1..255");
  }
}

WindowSet WindowSet::from_patterns(int rank, int radius, int alphabet,
                                   std::vector<WindowPattern> patterns) {
  WindowSet set(rank, radius, alphabet);
  const std::size_t expected = Ball::of(rank, radius).size();
  for (const auto& p : patterns) {
    if (p.rank != rank || p.radius != radius || p.labels.size() != expected) {
      throw std::invalid_argument("pattern does not match the window set shape");
    }
    for (auto s : p.labels) {
      if (s >= alphabet) {
        throw std::invalid_argument("pattern label outside the alphabet");
      }
    }
  }
  std::sort(patterns.begin(), patterns.end(), pattern_less);
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  set.patterns_ = std::move(patterns);
  return set;
}

WindowSet WindowSet::all_patterns(int rank, int radius, int alphabet) {
  WindowSet set(rank, radius, alphabet);
  const std::size_t sites = Ball::of(rank, radius).size();
  check_cap(saturating_pow(static_cast<std::size_t>(alphabet), sites),
            "full-shift window set");
  WindowPattern p = WindowPattern::constant(rank, radius, 0);
  // Odometer with the first ball position most significant: emits patterns
  // already in canonical order.
  for (;;) {
    set.patterns_.push_back(p);
    std::size_t i = sites;
    while (i > 0) {
      --i;
      if (++p.labels[i] < alphabet) {
        break;
      }
      p.labels[i] = 0;
      if (i == 0) {
        return set;
      }
    }
    if (sites == 0) {
      return set;  // radius-0 ball is never empty, defensive only
    }
  }
}

bool WindowSet::contains(const WindowPattern& p) const {
  return std::binary_search(patterns_.begin(), patterns_.end(), p,
                            pattern_less);
}

WindowSet WindowSet::restricted(int radius2) const {
  std::vector<WindowPattern> restricted;
  restricted.reserve(patterns_.size());
  for (const auto& p : patterns_) {
    restricted.push_back(p.restricted(radius2));
  }
  return from_patterns(rank_, radius2, alphabet_, std::move(restricted));
}

WindowSet WindowSet::union_with(const WindowSet& other) const {
  require_comparable(*this, other);
  std::vector<WindowPattern> merged;
  merged.reserve(patterns_.size() + other.patterns_.size());
  std::merge(patterns_.begin(), patterns_.end(), other.patterns_.begin(),
             other.patterns_.end(), std::back_inserter(merged), pattern_less);
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  WindowSet set(rank_, radius_, alphabet_);
  set.patterns_ = std::move(merged);
  return set;
}

bool WindowSet::subset_of(const WindowSet& other) const {
  require_comparable(*this, other);
  return std::includes(other.patterns_.begin(), other.patterns_.end(),
                       patterns_.begin(), patterns_.end(), pattern_less);
}

bool window_entourage_check(const WindowSet& p, const WindowSet& q) {
  require_comparable(p, q);
  return p.patterns() == q.patterns();
}

bool hb_union_property_check(const WindowSet& y1, const WindowSet& y2,
                             const WindowSet& z1, const WindowSet& z2) {
  if (!window_entourage_check(y1, y2) || !window_entourage_check(z1, z2)) {
    return true;  // implication is vacuous
  }
  return window_entourage_check(y1.union_with(z1), y2.union_with(z2));
}

WindowSet pushforward_window(
    const WindowSet& p, int modulus,
    const std::function<WindowPattern(const WindowPattern&)>& f) {
  if (modulus < 0 || modulus > p.radius()) {
    throw std::invalid_argument("pushforward modulus exceeds source radius");
  }
  const int target = p.radius() - modulus;
  std::vector<WindowPattern> images;
  images.reserve(p.size());
  for (const auto& pattern : p.patterns()) {
    WindowPattern image = f(pattern);
    if (image.rank != p.rank() || image.radius != target) {
      throw std::invalid_argument("window map output does not match modulus");
    }
    images.push_back(std::move(image));
  }
  return WindowSet::from_patterns(p.rank(), target, p.alphabet(),
                                  std::move(images));
}

void dump_window_csv(std::ostream& out, const WindowSet& set) {
  const Ball& ball = Ball::of(set.rank(), set.radius());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    out << (i ? "," : "") << ball.word(i).str();
  }
  out << "\n";
  for (const auto& p : set.patterns()) {
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
      out << (i ? "," : "") << int(p.labels[i]);
    }
    out << "\n";
  }
}

WindowSet parse_window_csv(std::istream& in, int rank, int alphabet) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("window CSV is empty");
  }
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      header.push_back(cell);
    }
  }
  int radius = -1;
  for (int r = 0; r <= 64; ++r) {
    if (Ball::cardinality(rank, r) == header.size()) {
      radius = r;
      break;
    }
    if (Ball::cardinality(rank, r) > header.size()) {
      break;
    }
  }
  if (radius < 0) {
    throw ParseError("window CSV header does not match any ball size");
  }
  const Ball& ball = Ball::of(rank, radius);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != ball.word(i).str()) {
      throw ParseError("window CSV header word '" + header[i] +
                       "' out of canonical order");
    }
  }
  std::vector<WindowPattern> patterns;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    WindowPattern p;
    p.rank = rank;
    p.radius = radius;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      int value;
      try {
        value = std::stoi(cell);
      } catch (const std::exception&) {
        throw ParseError("bad symbol '" + cell + "' in window CSV");
      }
      if (value < 0 || value >= alphabet) {
        throw ParseError("symbol outside alphabet in window CSV");
      }
      p.labels.push_back(static_cast<std::uint8_t>(value));
    }
    if (p.labels.size() != ball.size()) {
      throw ParseError("window CSV row has wrong width");
    }
    patterns.push_back(std::move(p));
  }
  return WindowSet::from_patterns(rank, radius, alphabet, std::move(patterns));
}

}  // namespace cag
