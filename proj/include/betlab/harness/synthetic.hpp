#pragma once

#include <cstdint>
#include <vector>

#include "betlab/ladder/frame.hpp"

namespace betlab {

// Random pre-live markets. Each runner follows a tick random walk whose
// drift is a slowly varying latent value; the same value tilts the resting
// money between the sides, so book imbalance leads price moves.
struct SyntheticParams {
  int min_runners = 4;
  int max_runners = 12;
  std::int64_t frame_ms = 500;
  std::int64_t pre_live_ms = 600000;  // frames cover the last 10 minutes before the start
  double min_price = 2.0;
  double max_price = 9.0;
  double move_probability = 0.12;  // chance of a one-tick move per frame
  double drift_persistence = 0.995;
  double drift_noise = 0.08;
  int levels = 5;
  double min_volume = 4000.0;  // runner traded volume range over the window, pounds
  double max_volume = 45000.0;
};

Market generate_market(const std::string& market_id, const std::string& event, std::int64_t start_ms,
                       std::uint64_t seed, const SyntheticParams& params = {},
                       const TickLadder& ladder = TickLadder::standard());

// `count` markets one hour apart, seeds derived from `seed`.
std::vector<Market> generate_markets(int count, std::uint64_t seed, const SyntheticParams& params = {},
                                     const TickLadder& ladder = TickLadder::standard());

}  // namespace betlab
