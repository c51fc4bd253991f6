#pragma once

#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "betlab/exchange/bet.hpp"
#include "betlab/ladder/frame.hpp"

namespace betlab {

struct Trade {
  int tick;
  Money amount;
  BetId back_bet;
  BetId lay_bet;
};

// Single-runner matching engine with price-time priority. Unmatched Lay money
// rests on the bid side, unmatched Back money on the ask side. An incoming
// Back crosses bids priced at or above its price (highest first); an incoming
// Lay crosses asks priced at or below its price (lowest first). Fills happen
// at the resting order's price. Bets never match other bets of the same owner
// unless the owner is kMarketOwner.
class OrderBook {
 public:
  explicit OrderBook(const TickLadder& ladder = TickLadder::standard());

  // Loads the resting depth of a frame as anonymous market orders and keeps
  // its traded volume and last traded price.
  static OrderBook from_frame(const Frame& frame, const TickLadder& ladder = TickLadder::standard());

  // Throws OffLadderPrice, NonPositiveAmount, MarketSuspended.
  Bet place_bet(Side side, Odds price, Money amount, OwnerId owner);
  Bet place_bet_at_tick(Side side, int tick, Money amount, OwnerId owner);
  // Throws UnknownBet, AlreadyTerminal.
  Bet cancel_bet(BetId id);

  const Bet& bet(BetId id) const;
  const std::vector<Trade>& trades() const { return trades_; }

  // Suspension rejects new bets; resting bets are kept.
  void suspend() { suspended_ = true; }
  void resume() { suspended_ = false; }
  bool suspended() const { return suspended_; }

  Money resting(BookSide side, int tick) const;
  Frame snapshot(std::int64_t timestamp_ms) const;
  // Resting bets at one price in queue order.
  std::vector<BetId> queue(BookSide side, int tick) const;

 private:
  using Queue = std::deque<BetId>;
  std::map<int, Queue>& book(BookSide s) { return s == BookSide::Bid ? bids_ : asks_; }
  const std::map<int, Queue>& book(BookSide s) const { return s == BookSide::Bid ? bids_ : asks_; }
  void rest(Bet& bet);
  void match_level(Bet& incoming, Queue& queue, int tick);

  const TickLadder* ladder_;
  std::map<int, Queue> bids_;
  std::map<int, Queue> asks_;
  std::unordered_map<BetId, Bet> bets_;
  std::vector<Trade> trades_;
  DepthMap traded_;
  std::optional<int> last_traded_;
  BetId next_id_ = 1;
  bool suspended_ = false;
};

}  // namespace betlab
