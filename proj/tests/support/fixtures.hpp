#pragma once

#include <initializer_list>
#include <optional>
#include <utility>

#include "betlab/core/error.hpp"
#include "betlab/ladder/frame.hpp"

namespace betlab::testing {

inline DepthMap depth(std::initializer_list<std::pair<double, double>> levels,
                      const TickLadder& ladder = TickLadder::standard()) {
  DepthMap m;
  for (auto [price, amount] : levels) m[ladder.tick_index(price)] = Money::from_double(amount);
  return m;
}

// Code of the betlab::Error thrown by f, or nullopt when nothing is thrown.
template <typename F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline int tick(double price) { return TickLadder::standard().tick_index(price); }

// Market depth snapshot printed as the running example of the exchange
// section: last traded 4.6, unmatched Lay money from 4.0 to 4.5, unmatched
// Back money from 4.6 to 5.0.
inline Frame example_book() {
  Frame f;
  f.timestamp_ms = 0;
  f.last_traded = tick(4.6);
  f.bids = depth({{4.5, 8}, {4.4, 2}, {4.3, 10}, {4.2, 448}, {4.1, 398}, {4.0, 335}});
  f.asks = depth({{5.0, 250}, {4.8, 263}, {4.7, 148}, {4.6, 349}});
  f.traded = depth({{5.1, 20}, {5.0, 93}, {4.9, 68}, {4.8, 24}, {4.7, 70}, {4.6, 76}, {4.5, 217}, {4.4, 23}, {4.3, 4}});
  return f;
}

}  // namespace betlab::testing
