#include "betlab/ladder/tick_ladder.hpp"

#include <algorithm>
#include <cmath>

#include "betlab/core/error.hpp"

namespace betlab {

TickLadder::TickLadder(std::vector<Band> bands) : bands_(std::move(bands)) {
  if (bands_.empty()) fail(ErrorCode::InvalidLadder, "ladder needs at least one band");
  for (std::size_t b = 0; b < bands_.size(); ++b) {
    const auto& band = bands_[b];
    const int lo = band.low.in_hundredths();
    const int hi = band.high.in_hundredths();
    const int st = band.step.in_hundredths();
    if (st <= 0 || lo < 101 || hi <= lo)
      fail(ErrorCode::InvalidLadder, "band " + std::to_string(b) + " is not increasing or has a non-positive step");
    if ((hi - lo) % st != 0)
      fail(ErrorCode::InvalidLadder, "band " + std::to_string(b) + " width is not a multiple of its step");
    if (b > 0 && bands_[b - 1].high != band.low)
      fail(ErrorCode::InvalidLadder, "band " + std::to_string(b) + " is not contiguous with the previous band");
    for (int p = (b == 0 ? lo : lo + st); p <= hi; p += st) prices_.push_back(Odds::hundredths(p));
  }
}

const TickLadder& TickLadder::standard() {
  static const TickLadder ladder = [] {
    auto o = [](int h) { return Odds::hundredths(h); };
    return TickLadder({{o(101), o(200), o(1)},
                       {o(200), o(300), o(2)},
                       {o(300), o(400), o(5)},
                       {o(400), o(600), o(10)},
                       {o(600), o(1000), o(20)},
                       {o(1000), o(2000), o(50)},
                       {o(2000), o(3000), o(100)},
                       {o(3000), o(5000), o(200)},
                       {o(5000), o(10000), o(500)},
                       {o(10000), o(100000), o(1000)}});
  }();
  return ladder;
}

std::optional<int> TickLadder::find_tick(Odds price) const {
  auto it = std::lower_bound(prices_.begin(), prices_.end(), price);
  if (it == prices_.end() || *it != price) return std::nullopt;
  return static_cast<int>(it - prices_.begin());
}

int TickLadder::tick_index(Odds price) const {
  if (auto t = find_tick(price)) return *t;
  fail(ErrorCode::OffLadderPrice, "price " + price.str() + " is not on the ladder");
}

int TickLadder::tick_index(double price) const {
  const double scaled = price * 100.0;
  const double r = std::nearbyint(scaled);
  if (!std::isfinite(price) || std::fabs(scaled - r) > 1e-6)
    fail(ErrorCode::OffLadderPrice, "price " + format_decimal(price, 8) + " is not on the ladder");
  return tick_index(Odds::hundredths(static_cast<std::int32_t>(r)));
}

Odds TickLadder::price_at(int tick) const {
  if (!contains(tick))
    fail(ErrorCode::IndexOutOfRange,
         "tick " + std::to_string(tick) + " outside [0, " + std::to_string(size() - 1) + "]");
  return prices_[static_cast<std::size_t>(tick)];
}

int TickLadder::clamp(int tick) const { return std::clamp(tick, 0, size() - 1); }

int TickLadder::nearest_tick(double price) const {
  const auto h = price * 100.0;
  auto it = std::lower_bound(prices_.begin(), prices_.end(), h,
                             [](Odds o, double v) { return o.in_hundredths() < v; });
  if (it == prices_.begin()) return 0;
  if (it == prices_.end()) return size() - 1;
  const int hi = static_cast<int>(it - prices_.begin());
  const double dhi = it->in_hundredths() - h;
  const double dlo = h - (it - 1)->in_hundredths();
  return dlo <= dhi ? hi - 1 : hi;
}

}  // namespace betlab
