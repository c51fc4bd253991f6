#pragma once

#include <array>
#include <span>
#include <vector>

namespace betlab {

// Movement classes in ascending order of the target.
enum class Movement { StrongDown = 0, WeakDown = 1, Neutral = 2, WeakUp = 3, StrongUp = 4 };

struct QuintileLabels {
  // Upper edge of classes 0..3 (nearest rank: sorted[ceil((j+1) n / 5) - 1]).
  std::array<double, 4> boundaries{};
  std::vector<int> labels;
};

// Equal-count split of the training targets. Ties are broken by input order
// so class sizes never differ by more than one.
QuintileLabels label_by_quintiles(std::span<const double> targets);

// Class of a new value under fixed boundaries: the number of boundaries it exceeds.
int class_for(double value, const std::array<double, 4>& boundaries);

}  // namespace betlab
