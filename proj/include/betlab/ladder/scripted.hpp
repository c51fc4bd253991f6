#pragma once

#include <vector>

#include "betlab/ladder/frame.hpp"

namespace betlab {

// Builds a plausible depth frame sequence from a path of last traded ticks.
// Each frame shows `levels` ask levels starting at the traded tick and
// `levels` bid levels below it, each holding `level_amount`; every frame
// adds `volume_per_frame` of traded money at its traded tick.
struct ScriptParams {
  Money level_amount = Money::pounds(50);
  int levels = 4;
  Money volume_per_frame = Money::pounds(20);
  std::int64_t frame_ms = 500;
  std::int64_t start_ms = 0;
};

std::vector<Frame> scripted_frames(const std::vector<int>& traded_ticks, const ScriptParams& params = {},
                                   const TickLadder& ladder = TickLadder::standard());

}  // namespace betlab
