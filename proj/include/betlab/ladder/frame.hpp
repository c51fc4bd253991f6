#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betlab/core/money.hpp"
#include "betlab/ladder/tick_ladder.hpp"

namespace betlab {

using DepthMap = std::map<int, Money>;  // tick -> amount

enum class BookSide { Bid, Ask };

// One market-depth snapshot for one runner. Bids hold unmatched Lay money
// (prices below the touch), asks hold unmatched Back money.
struct Frame {
  std::int64_t timestamp_ms = 0;
  std::optional<int> last_traded;
  DepthMap bids;
  DepthMap asks;
  DepthMap traded;  // cumulative matched money per tick

  std::optional<int> best_bid() const;
  std::optional<int> best_ask() const;
  const DepthMap& side(BookSide s) const { return s == BookSide::Bid ? bids : asks; }
  DepthMap& side(BookSide s) { return s == BookSide::Bid ? bids : asks; }
  Money amount_at(BookSide s, int tick) const;
  Money amount_at_traded(int tick) const;
  // Total of all resting money on a side.
  Money side_total(BookSide s) const;
  // Total over the best `depth` non-empty levels of a side.
  Money side_total(BookSide s, int depth) const;
  Money traded_total() const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

enum class FrameViolation {
  NegativeAmount,
  CrossedBook,
  TickOutOfRange,
  NonIncreasingTimestamp,
  VolumeDecreased,
};

std::string_view to_string(FrameViolation v);

std::vector<FrameViolation> validate_frame(const Frame& frame, const TickLadder& ladder = TickLadder::standard());

struct SequenceViolation {
  std::size_t frame_index;
  FrameViolation violation;
};

// Per-frame checks plus ordering and traded-volume monotonicity.
std::vector<SequenceViolation> validate_sequence(const std::vector<Frame>& frames,
                                                 const TickLadder& ladder = TickLadder::standard());

struct RunnerBook {
  std::string runner_id;
  std::vector<Frame> frames;
};

struct Market {
  std::string market_id;
  std::string event;
  std::int64_t start_ms = 0;  // scheduled start
  std::vector<RunnerBook> runners;

  const RunnerBook* find_runner(const std::string& id) const;
};

// Puts every runner on the union of all timestamps, holding each runner's
// last frame forward (and its first frame backward).
Market align_runners(const Market& market);

}  // namespace betlab
