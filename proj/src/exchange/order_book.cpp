#include "betlab/exchange/order_book.hpp"

#include <algorithm>

#include "betlab/core/error.hpp"

namespace betlab {

OrderBook::OrderBook(const TickLadder& ladder) : ladder_(&ladder) {}

OrderBook OrderBook::from_frame(const Frame& frame, const TickLadder& ladder) {
  OrderBook ob(ladder);
  auto seed = [&](BookSide s, const DepthMap& depth) {
    for (const auto& [tick, amount] : depth) {
      if (amount <= Money()) continue;
      Bet b;
      b.id = ob.next_id_++;
      b.side = s == BookSide::Bid ? Side::Lay : Side::Back;
      b.tick = tick;
      b.requested = amount;
      b.owner = kMarketOwner;
      refresh_state(b);
      ob.rest(b);
    }
  };
  seed(BookSide::Bid, frame.bids);
  seed(BookSide::Ask, frame.asks);
  ob.traded_ = frame.traded;
  ob.last_traded_ = frame.last_traded;
  return ob;
}

Bet OrderBook::place_bet(Side side, Odds price, Money amount, OwnerId owner) {
  return place_bet_at_tick(side, ladder_->tick_index(price), amount, owner);
}

Bet OrderBook::place_bet_at_tick(Side side, int tick, Money amount, OwnerId owner) {
  if (!ladder_->contains(tick)) fail(ErrorCode::OffLadderPrice, "tick " + std::to_string(tick) + " is off the ladder");
  if (amount <= Money()) fail(ErrorCode::NonPositiveAmount, "bet amount must be positive");
  if (suspended_) fail(ErrorCode::MarketSuspended, "market is suspended");

  Bet bet;
  bet.id = next_id_++;
  bet.side = side;
  bet.tick = tick;
  bet.requested = amount;
  bet.owner = owner;
  bet.state = BetState::InProgress;

  if (side == Side::Back) {
    for (auto it = bids_.rbegin(); it != bids_.rend() && it->first >= tick && bet.unmatched() > Money(); ++it)
      match_level(bet, it->second, it->first);
  } else {
    for (auto it = asks_.begin(); it != asks_.end() && it->first <= tick && bet.unmatched() > Money(); ++it)
      match_level(bet, it->second, it->first);
  }
  for (auto* m : {&bids_, &asks_})
    for (auto it = m->begin(); it != m->end();) it = it->second.empty() ? m->erase(it) : std::next(it);

  bet.matched_on_placement = bet.matched;
  refresh_state(bet);
  if (bet.unmatched() > Money()) {
    bet.queue_ahead = resting(side == Side::Back ? BookSide::Ask : BookSide::Bid, tick);
    rest(bet);
  } else {
    bets_[bet.id] = bet;
  }
  return bets_.at(bet.id);
}

void OrderBook::match_level(Bet& incoming, Queue& queue, int tick) {
  for (auto it = queue.begin(); it != queue.end() && incoming.unmatched() > Money();) {
    Bet& resting_bet = bets_.at(*it);
    if (resting_bet.owner == incoming.owner && incoming.owner != kMarketOwner) {
      ++it;
      continue;
    }
    const Money amount = std::min(incoming.unmatched(), resting_bet.unmatched());
    apply_fill(incoming, tick, amount);
    apply_fill(resting_bet, tick, amount);
    const bool incoming_is_back = incoming.side == Side::Back;
    trades_.push_back({tick, amount, incoming_is_back ? incoming.id : resting_bet.id,
                       incoming_is_back ? resting_bet.id : incoming.id});
    traded_[tick] += amount;
    last_traded_ = tick;
    if (resting_bet.unmatched().is_zero())
      it = queue.erase(it);
    else
      ++it;
  }
}

void OrderBook::rest(Bet& bet) {
  const BookSide s = bet.side == Side::Back ? BookSide::Ask : BookSide::Bid;
  book(s)[bet.tick].push_back(bet.id);
  bets_[bet.id] = bet;
}

Bet OrderBook::cancel_bet(BetId id) {
  auto it = bets_.find(id);
  if (it == bets_.end()) fail(ErrorCode::UnknownBet, "unknown bet " + std::to_string(id));
  it->second = betlab::cancel_bet(it->second);
  const BookSide s = it->second.side == Side::Back ? BookSide::Ask : BookSide::Bid;
  auto level = book(s).find(it->second.tick);
  if (level != book(s).end()) {
    auto& q = level->second;
    q.erase(std::remove(q.begin(), q.end(), id), q.end());
    if (q.empty()) book(s).erase(level);
  }
  return it->second;
}

const Bet& OrderBook::bet(BetId id) const {
  auto it = bets_.find(id);
  if (it == bets_.end()) fail(ErrorCode::UnknownBet, "unknown bet " + std::to_string(id));
  return it->second;
}

Money OrderBook::resting(BookSide side, int tick) const {
  const auto& m = book(side);
  auto it = m.find(tick);
  Money total;
  if (it == m.end()) return total;
  for (BetId id : it->second) total += bets_.at(id).unmatched();
  return total;
}

std::vector<BetId> OrderBook::queue(BookSide side, int tick) const {
  const auto& m = book(side);
  auto it = m.find(tick);
  if (it == m.end()) return {};
  return {it->second.begin(), it->second.end()};
}

Frame OrderBook::snapshot(std::int64_t timestamp_ms) const {
  Frame f;
  f.timestamp_ms = timestamp_ms;
  f.last_traded = last_traded_;
  for (BookSide s : {BookSide::Bid, BookSide::Ask})
    for (const auto& [tick, q] : book(s)) {
      const Money m = resting(s, tick);
      if (m > Money()) f.side(s)[tick] = m;
    }
  f.traded = traded_;
  return f;
}

}  // namespace betlab
