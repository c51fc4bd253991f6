#include "betlab/harness/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "betlab/core/error.hpp"
#include "betlab/nnkit/rng.hpp"

namespace betlab {

Market generate_market(const std::string& market_id, const std::string& event, std::int64_t start_ms,
                       std::uint64_t seed, const SyntheticParams& p, const TickLadder& ladder) {
  if (p.min_runners < 1 || p.max_runners < p.min_runners || p.frame_ms <= 0 || p.pre_live_ms < p.frame_ms ||
      p.levels < 1)
    fail(ErrorCode::InvalidArgument, "bad synthetic market parameters");
  nn::Rng rng(seed);
  Market m;
  m.market_id = market_id;
  m.event = event;
  m.start_ms = start_ms;
  const int runners = p.min_runners + static_cast<int>(rng.index(static_cast<std::size_t>(p.max_runners - p.min_runners + 1)));
  const std::int64_t frames = p.pre_live_ms / p.frame_ms;
  const int low = ladder.nearest_tick(p.min_price), high = ladder.nearest_tick(p.max_price);

  for (int r = 0; r < runners; ++r) {
    RunnerBook book;
    book.runner_id = "R" + std::to_string(r + 1);
    int tick = low + static_cast<int>(rng.index(static_cast<std::size_t>(high - low + 1)));
    const double volume = std::exp(rng.uniform(std::log(p.min_volume), std::log(p.max_volume)));
    const double per_frame = volume / static_cast<double>(frames);
    double drift = rng.normal(0.0, 1.0);
    DepthMap traded;
    for (std::int64_t f = 0; f < frames; ++f) {
      drift = p.drift_persistence * drift + p.drift_noise * rng.normal(0.0, 1.0);
      const double up = 1.0 / (1.0 + std::exp(-2.0 * drift));
      const double u = rng.uniform(0.0, 1.0);
      if (u < p.move_probability * up)
        ++tick;
      else if (u < p.move_probability)
        --tick;
      tick = std::clamp(tick, std::max(low - 10, p.levels), std::min(high + 10, ladder.size() - 1 - p.levels));

      Frame frame;
      frame.timestamp_ms = start_ms - p.pre_live_ms + f * p.frame_ms;
      frame.last_traded = tick;
      const double tilt = std::exp(0.6 * drift);
      for (int k = 0; k < p.levels; ++k) {
        const double base = per_frame * 3.0 * (1.0 + k) * rng.uniform(0.5, 1.5);
        frame.asks[tick + k] = Money::from_double(base / tilt);
        frame.bids[tick - 1 - k] = Money::from_double(base * tilt);
      }
      traded[tick] += Money::from_double(per_frame * rng.uniform(0.5, 1.5));
      frame.traded = traded;
      book.frames.push_back(std::move(frame));
    }
    m.runners.push_back(std::move(book));
  }
  return m;
}

std::vector<Market> generate_markets(int count, std::uint64_t seed, const SyntheticParams& params,
                                     const TickLadder& ladder) {
  std::vector<Market> out;
  nn::Rng rng(seed);
  const std::int64_t base = 1'700'000'000'000;
  for (int i = 0; i < count; ++i) {
    const std::string id = "M" + std::to_string(i + 1);
    out.push_back(generate_market(id, "Race_" + std::to_string(i + 1), base + i * 3'600'000LL,
                                  rng.engine()(), params, ladder));
  }
  return out;
}

}  // namespace betlab
