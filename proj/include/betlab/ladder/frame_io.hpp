#pragma once

#include <iosfwd>
#include <string>

#include "betlab/ladder/frame.hpp"

namespace betlab {

// Market file, tab separated:
//   #market <market_id> <event> <scheduled_start_ms>
//   <timestamp_ms> <runner_id> <last_traded|-> <bids> <asks> <traded>
// Each ladder column is "price:amount,price:amount,..." in ascending price
// order, or "-" when empty. Prices use decimal odds, amounts pounds.pence.
// Lines starting with "##" are comments.

std::string format_depth(const DepthMap& depth, const TickLadder& ladder = TickLadder::standard());
DepthMap parse_depth(const std::string& text, const TickLadder& ladder = TickLadder::standard());

std::string format_frame_line(const std::string& runner_id, const Frame& frame,
                              const TickLadder& ladder = TickLadder::standard());

void write_market(std::ostream& os, const Market& market, const TickLadder& ladder = TickLadder::standard());
// Lines may be in any order; frames are sorted by timestamp per runner and
// runners keep their order of first appearance.
Market read_market(std::istream& is, const TickLadder& ladder = TickLadder::standard());

Market load_market(const std::string& path, const TickLadder& ladder = TickLadder::standard());
void save_market(const std::string& path, const Market& market, const TickLadder& ladder = TickLadder::standard());

}  // namespace betlab
