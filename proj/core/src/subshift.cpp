#include "cag/subshift.hpp"

#include <algorithm>
#include <stdexcept>

#include "cag/ball.hpp"

namespace cag {

std::string FullShift::describe() const {
  return "full shift (rank " + std::to_string(rank_) + ", alphabet " +
         std::to_string(alphabet_) + ")";
}

std::string FixSubshift::describe() const {
  return "Fix(" + group_.describe() + ")";
}

PeriodicOrbitFamily::PeriodicOrbitFamily(
    int alphabet, std::vector<PeriodicConfiguration> base_points)
    : alphabet_(alphabet) {
  for (const auto& x : base_points) {
    if (x.alphabet != alphabet) {
      throw std::invalid_argument("orbit family alphabet mismatch");
    }
    for (int s = 0; s < x.period(); ++s) {
      PeriodicConfiguration shifted = shift_act(s, x).minimal_form();
      bool known = std::any_of(
          points_.begin(), points_.end(),
          [&](const PeriodicConfiguration& y) { return y == shifted; });
      if (!known) {
        points_.push_back(std::move(shifted));
      }
    }
  }
}

WindowSet PeriodicOrbitFamily::projection(int radius) const {
  std::vector<WindowPattern> patterns;
  const Ball& ball = Ball::of(1, radius);
  for (const auto& x : points_) {
    WindowPattern p;
    p.rank = 1;
    p.radius = radius;
    p.labels.reserve(ball.size());
    for (const FreeWord& w : ball.words()) {
      p.labels.push_back(x.at(w.exponent_sum()));
    }
    patterns.push_back(std::move(p));
  }
  return WindowSet::from_patterns(1, radius, alphabet_, std::move(patterns));
}

std::string PeriodicOrbitFamily::describe() const {
  return "union of " + std::to_string(points_.size()) + " periodic points";
}

ExplicitFamily::ExplicitFamily(int rank, int alphabet,
                               std::vector<WindowSet> per_radius)
    : rank_(rank), alphabet_(alphabet), per_radius_(std::move(per_radius)) {
  for (std::size_t r = 0; r < per_radius_.size(); ++r) {
    const auto& set = per_radius_[r];
    if (set.rank() != rank_ || set.alphabet() != alphabet_ ||
        set.radius() != static_cast<int>(r)) {
      throw std::invalid_argument("explicit family shape mismatch");
    }
  }
}

WindowSet ExplicitFamily::projection(int radius) const {
  if (radius < 0 || static_cast<std::size_t>(radius) >= per_radius_.size()) {
    throw std::invalid_argument("explicit family has no projection at radius " +
                                std::to_string(radius));
  }
  return per_radius_[static_cast<std::size_t>(radius)];
}

AgreementRadius hb_agreement_radius(const Subshift& y, const Subshift& z,
                                    int rmax) {
  if (y.rank() != z.rank() || y.alphabet() != z.alphabet()) {
    throw std::invalid_argument("subshifts are not comparable");
  }
  if (rmax < 0) {
    throw std::invalid_argument("rmax must be nonnegative");
  }
  for (int t = 0; t <= rmax; ++t) {
    if (!window_entourage_check(y.projection(t), z.projection(t))) {
      return AgreementRadius::exactly(t - 1);
    }
  }
  return AgreementRadius::at_least(rmax);
}

}  // namespace cag
