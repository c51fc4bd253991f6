#pragma once

#include <optional>
#include <vector>

#include "betlab/core/money.hpp"

namespace betlab {

// Discrete odds scale made of contiguous bands. The first band includes its
// lower bound; every later band starts just above the previous high.
class TickLadder {
 public:
  struct Band {
    Odds low;
    Odds high;
    Odds step;
  };

  explicit TickLadder(std::vector<Band> bands);

  // Exchange default: 1.01..2 by .01, ..., 100..1000 by 10.
  static const TickLadder& standard();

  const std::vector<Band>& bands() const { return bands_; }

  int size() const { return static_cast<int>(prices_.size()); }
  bool contains(int tick) const { return tick >= 0 && tick < size(); }
  Odds min_price() const { return prices_.front(); }
  Odds max_price() const { return prices_.back(); }

  // Throws OffLadderPrice when the price is not a ladder step.
  int tick_index(Odds price) const;
  int tick_index(double price) const;
  std::optional<int> find_tick(Odds price) const;
  // Throws IndexOutOfRange.
  Odds price_at(int tick) const;
  double price_value(int tick) const { return price_at(tick).as_double(); }

  // Signed number of steps from a to b.
  int ticks_between(Odds a, Odds b) const { return tick_index(b) - tick_index(a); }
  Odds offset(Odds price, int ticks) const { return price_at(tick_index(price) + ticks); }
  int clamp(int tick) const;
  // Closest tick to an arbitrary real price (ties go to the lower tick).
  int nearest_tick(double price) const;

 private:
  std::vector<Band> bands_;
  std::vector<Odds> prices_;
};

}  // namespace betlab
