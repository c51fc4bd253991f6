#pragma once

#include <span>
#include <vector>

#include "betlab/ladder/frame.hpp"

namespace betlab {

// A segment is a short run of consecutive frames (four per time step).
using FrameSpan = std::span<const Frame>;

// Sum over the segment of each frame's tick displacement from the first frame.
double indicator_price_integral(FrameSpan segment);
// Sum of frame-to-frame changes in the total resting money on one side
// (cancellations count as negative changes).
double indicator_liquidity_delta(FrameSpan segment, BookSide side);
// Signed traded-volume change: money traded at or below the previous best bid
// counts negative, at or above the previous best ask positive; inside the
// spread the sign follows the move against the previous traded price.
double indicator_volume_direction(FrameSpan segment);
// Tick distance from the window's first frame to the segment's last frame.
double indicator_price_diff_from_start(const Frame& window_start, FrameSpan segment);
// Weight of money Bid / (Bid + Ask) over the best `depth` levels, 0.5 when
// both sides are empty.
double weight_of_money(const Frame& frame, int depth);
double indicator_wom(FrameSpan segment, int depth);
// Weight of money pooled over several runners, averaged over frames. All
// spans must have the same length.
double indicator_wom_combined(const std::vector<FrameSpan>& runners, int depth);

}  // namespace betlab
