#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cag/agreement.hpp"
#include "cag/marked_group.hpp"
#include "cag/shift_space.hpp"
#include "cag/window.hpp"

namespace cag {

// Lazily projected subshift: exposes pi_r on demand, never materializing a
// configuration space.
class Subshift {
public:
  virtual ~Subshift() = default;

  virtual int rank() const = 0;
  virtual int alphabet() const = 0;
  virtual WindowSet projection(int radius) const = 0;
  virtual std::string describe() const = 0;
};

class FullShift final : public Subshift {
public:
  FullShift(int rank, int alphabet) : rank_(rank), alphabet_(alphabet) {}

  int rank() const override { return rank_; }
  int alphabet() const override { return alphabet_; }
  WindowSet projection(int radius) const override {
    return WindowSet::all_patterns(rank_, radius, alphabet_);
  }
  std::string describe() const override;

private:
  int rank_;
  int alphabet_;
};

// Fix(N) for the kernel N of a marked group.
class FixSubshift final : public Subshift {
public:
  FixSubshift(MarkedGroup group, int alphabet)
      : group_(std::move(group)), alphabet_(alphabet) {}

  int rank() const override { return group_.rank(); }
  int alphabet() const override { return alphabet_; }
  WindowSet projection(int radius) const override {
    return fix_window(group_, alphabet_, radius);
  }
  std::string describe() const override;

  const MarkedGroup& group() const { return group_; }

private:
  MarkedGroup group_;
  int alphabet_;
};

// Finite union of shift orbits of periodic points over Z.
class PeriodicOrbitFamily final : public Subshift {
public:
  PeriodicOrbitFamily(int alphabet,
                      std::vector<PeriodicConfiguration> base_points);

  int rank() const override { return 1; }
  int alphabet() const override { return alphabet_; }
  WindowSet projection(int radius) const override;
  std::string describe() const override;

  // All member points (every shift of every base point), deduplicated.
  const std::vector<PeriodicConfiguration>& points() const { return points_; }

private:
  int alphabet_;
  std::vector<PeriodicConfiguration> points_;
};

// Test scaffolding: an arbitrary per-radius family of window sets.
class ExplicitFamily final : public Subshift {
public:
  ExplicitFamily(int rank, int alphabet, std::vector<WindowSet> per_radius);

  int rank() const override { return rank_; }
  int alphabet() const override { return alphabet_; }
  WindowSet projection(int radius) const override;
  std::string describe() const override { return "explicit family"; }

private:
  int rank_;
  int alphabet_;
  std::vector<WindowSet> per_radius_;
};

// Largest r <= rmax with equal projections at every radius <= r, i.e. the
// agreement radius of the two families in the Hausdorff-Bourbaki structure.
// Exactly(-1) means the radius-0 projections already differ.
AgreementRadius hb_agreement_radius(const Subshift& y, const Subshift& z,
                                    int rmax);

}  // namespace cag
