#include "cag/shift_space.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cag/ball.hpp"
#include "cag/errors.hpp"
#include "cag/resource.hpp"

namespace cag {

std::uint8_t PeriodicConfiguration::at(std::int64_t i) const {
  const auto n = static_cast<std::int64_t>(values.size());
  return values[static_cast<std::size_t>(((i % n) + n) % n)];
}

PeriodicConfiguration PeriodicConfiguration::minimal_form() const {
  const int n = period();
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) {
      continue;
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      ok = values[static_cast<std::size_t>(i)] ==
           values[static_cast<std::size_t>(i % d)];
    }
    if (ok) {
      PeriodicConfiguration m;
      m.alphabet = alphabet;
      m.values.assign(values.begin(), values.begin() + d);
      return m;
    }
  }
  return *this;
}

bool PeriodicConfiguration::same_point(
    const PeriodicConfiguration& other) const {
  return minimal_form() == other.minimal_form();
}

PeriodicConfiguration PeriodicConfiguration::parse(std::string_view csv,
                                                   int alphabet) {
  PeriodicConfiguration x;
  x.alphabet = alphabet;
  std::stringstream ss{std::string(csv)};
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    int value;
    try {
      value = std::stoi(cell);
    } catch (const std::exception&) {
      throw ParseError("bad symbol '" + cell + "' in configuration");
    }
    if (value < 0 || value >= alphabet) {
      throw ParseError("symbol outside alphabet in configuration");
    }
    x.values.push_back(static_cast<std::uint8_t>(value));
  }
  if (x.values.empty()) {
    throw ParseError("configuration must have at least one symbol");
  }
  return x;
}

std::string PeriodicConfiguration::str() const {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) {
      s.push_back(',');
    }
    s += std::to_string(int(values[i]));
  }
  return s;
}

PeriodicConfiguration shift_act(std::int64_t g,
                                const PeriodicConfiguration& x) {
  PeriodicConfiguration y;
  y.alphabet = x.alphabet;
  y.values.resize(x.values.size());
  for (int h = 0; h < x.period(); ++h) {
    y.values[static_cast<std::size_t>(h)] = x.at(h - g);
  }
  return y;
}

FiniteConfiguration shift_act(std::size_t g, const FiniteConfiguration& x) {
  if (!x.group.is_finite()) {
    throw std::invalid_argument("finite configuration over infinite group");
  }
  const std::size_t n = x.group.order();
  if (g >= n || x.values.size() != n) {
    throw std::invalid_argument("element out of range");
  }
  FiniteConfiguration y{x.group, x.alphabet, {}};
  y.values.resize(n);
  const std::size_t ginv = x.group.inv(g);
  for (std::size_t h = 0; h < n; ++h) {
    y.values[h] = x.values[x.group.mul(ginv, h)];
  }
  return y;
}

FiniteConfiguration shift_act(const FreeWord& g, const FiniteConfiguration& x) {
  return shift_act(x.group.eval_index(g), x);
}

std::vector<std::vector<std::size_t>> coset_classes(const MarkedGroup& g,
                                                    int radius) {
  const Ball& ball = Ball::of(g.rank(), radius);
  std::map<std::string, std::size_t> class_of;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const std::string id = g.eval(ball.word(i));
    auto it = class_of.find(id);
    if (it == class_of.end()) {
      it = class_of.emplace(id, classes.size()).first;
      classes.emplace_back();
    }
    classes[it->second].push_back(i);
  }
  return classes;
}

WindowSet fix_window(const MarkedGroup& g, int alphabet, int radius) {
  if (alphabet < 1 || alphabet > 255) {
    throw std::invalid_argument("alphabet size must be in 1..255");
  }
  const auto classes = coset_classes(g, radius);
  const std::size_t sites = Ball::of(g.rank(), radius).size();

  std::size_t count = 1;
  const std::size_t kMax = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (count > kMax / static_cast<std::size_t>(alphabet)) {
      count = kMax;
      break;
    }
    count *= static_cast<std::size_t>(alphabet);
  }
  check_cap(count, "fix window");

  WindowPattern p;
  p.rank = g.rank();
  p.radius = radius;
  p.labels.assign(sites, 0);

  std::vector<std::uint8_t> assignment(classes.size(), 0);
  std::vector<WindowPattern> patterns;
  patterns.reserve(count);
  // Odometer over class values with the first-occurring class most
  // significant: classes are ordered by first occurrence, so this emits
  // label vectors in canonical lexicographic order.
  for (;;) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t i : classes[c]) {
        p.labels[i] = assignment[c];
      }
    }
    patterns.push_back(p);
    std::size_t c = classes.size();
    bool done = true;
    while (c > 0) {
      --c;
      if (++assignment[c] < alphabet) {
        done = false;
        break;
      }
      assignment[c] = 0;
    }
    if (done) {
      break;
    }
  }
  WindowSet set = WindowSet::from_patterns(g.rank(), radius, alphabet,
                                           std::move(patterns));
  return set;
}

std::uint8_t pullback_value(const FiniteConfiguration& y, const FreeWord& w) {
  return y.values[y.group.eval_index(w)];
}

WindowPattern pullback_window(const FiniteConfiguration& y, int radius) {
  const Ball& ball = Ball::of(y.group.rank(), radius);
  WindowPattern p;
  p.rank = y.group.rank();
  p.radius = radius;
  p.labels.reserve(ball.size());
  for (const FreeWord& w : ball.words()) {
    p.labels.push_back(pullback_value(y, w));
  }
  return p;
}

FiniteConfiguration pullback_inverse(const MarkedGroup& g,
                                     const WindowPattern& p, int alphabet) {
  if (!g.is_finite()) {
    throw std::invalid_argument("pullback inverse requires a finite quotient");
  }
  const Ball& ball = Ball::of(g.rank(), p.radius);
  const std::size_t n = g.order();
  FiniteConfiguration y{g, alphabet, {}};
  y.values.assign(n, 0);
  std::vector<bool> covered(n, false);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const std::size_t e = g.eval_index(ball.word(i));
    if (!covered[e]) {
      covered[e] = true;
      y.values[e] = p.labels[i];
    } else if (y.values[e] != p.labels[i]) {
      throw std::invalid_argument(
          "window is not constant on cosets; not in the image of rho*");
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (!covered[e]) {
      throw std::invalid_argument(
          "window does not cover a transversal of the quotient");
    }
  }
  return y;
}

}  // namespace cag
