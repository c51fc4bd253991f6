#pragma once

#include <map>
#include <optional>
#include <vector>

#include "betlab/exchange/bet.hpp"
#include "betlab/ladder/frame.hpp"

namespace betlab {

// Executes one agent's bets against recorded depth frames for one runner.
// The recorded amounts never include the agent's own money, so:
//  - a new bet crosses the displayed opposing money that reaches its price,
//    less whatever the agent already took from those levels;
//  - a resting bet sits behind all displayed money at its price and fills
//    only from traded volume beyond that queue (see step_replay_fill), or
//    when later frames display opposing money crossing its price.
// Every fill is booked at the bet's own price; no price improvement is
// assumed.
class ReplayExchange {
 public:
  explicit ReplayExchange(const TickLadder& ladder = TickLadder::standard(), OwnerId agent = 1);

  // Advances to the next frame, filling resting bets from what changed.
  void on_frame(const Frame& frame);
  bool has_frame() const { return has_frame_; }
  const Frame& frame() const { return frame_; }
  const TickLadder& ladder() const { return *ladder_; }

  // Throws OffLadderPrice, NonPositiveAmount, InvalidArgument (no frame yet).
  BetId place(Side side, int tick, Money amount);
  // Throws UnknownBet, AlreadyTerminal.
  Bet cancel(BetId id);
  const Bet& bet(BetId id) const;

  // Opposing money a new bet at `tick` could take right now.
  Money available(Side side, int tick) const;
  // Best price an incoming bet of `side` can get now, if any money is displayed.
  std::optional<int> best_opposing(Side side) const;
  // Opposing ticks that an incoming bet would reach, best first.
  std::vector<int> opposing_ticks(Side side) const;

  // Books a fill at `tick` without any market counterparty. Used to settle
  // what remains of a position when the market closes.
  void force_fill(BetId id, int tick, Money amount);

 private:
  struct Entry {
    Bet bet;
    Money traded_at_placement;
    Money through_filled;
  };
  Money take(Side side, int tick, Money wanted);
  Money displayed(BookSide side, int tick) const;

  const TickLadder* ladder_;
  OwnerId agent_;
  Frame frame_;
  bool has_frame_ = false;
  std::map<BetId, Entry> bets_;
  // money already taken from displayed levels, per side
  std::map<int, Money> consumed_bids_;
  std::map<int, Money> consumed_asks_;
  BetId next_id_ = 1;
};

}  // namespace betlab
