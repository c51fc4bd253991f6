#include "betlab/ladder/scripted.hpp"

namespace betlab {

std::vector<Frame> scripted_frames(const std::vector<int>& traded_ticks, const ScriptParams& params,
                                   const TickLadder& ladder) {
  std::vector<Frame> out;
  out.reserve(traded_ticks.size());
  DepthMap traded;
  for (std::size_t i = 0; i < traded_ticks.size(); ++i) {
    const int t = ladder.clamp(traded_ticks[i]);
    Frame f;
    f.timestamp_ms = params.start_ms + static_cast<std::int64_t>(i) * params.frame_ms;
    f.last_traded = t;
    for (int k = 0; k < params.levels; ++k) {
      if (ladder.contains(t + k)) f.asks[t + k] = params.level_amount;
      if (ladder.contains(t - 1 - k)) f.bids[t - 1 - k] = params.level_amount;
    }
    traded[t] += params.volume_per_frame;
    f.traded = traded;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace betlab
