#include "betlab/exchange/replay.hpp"

#include <algorithm>

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

// An incoming Back takes Lay money (bids); an incoming Lay takes Back money (asks).
BookSide opposing_side(Side s) { return s == Side::Back ? BookSide::Bid : BookSide::Ask; }
BookSide own_side(Side s) { return s == Side::Back ? BookSide::Ask : BookSide::Bid; }

bool crosses(Side s, int opposing_tick, int tick) {
  return s == Side::Back ? opposing_tick >= tick : opposing_tick <= tick;
}

Money traded_at(const Frame& f, int tick) {
  auto it = f.traded.find(tick);
  return it == f.traded.end() ? Money() : it->second;
}

}  // namespace

ReplayExchange::ReplayExchange(const TickLadder& ladder, OwnerId agent) : ladder_(&ladder), agent_(agent) {}

Money ReplayExchange::displayed(BookSide side, int tick) const {
  const Money shown = frame_.amount_at(side, tick);
  const auto& consumed = side == BookSide::Bid ? consumed_bids_ : consumed_asks_;
  auto it = consumed.find(tick);
  const Money used = it == consumed.end() ? Money() : it->second;
  return std::max(Money(), shown - used);
}

std::vector<int> ReplayExchange::opposing_ticks(Side side) const {
  std::vector<int> out;
  const auto& depth = frame_.side(opposing_side(side));
  for (const auto& [tick, amount] : depth)
    if (displayed(opposing_side(side), tick) > Money()) out.push_back(tick);
  if (side == Side::Back) std::reverse(out.begin(), out.end());
  return out;
}

std::optional<int> ReplayExchange::best_opposing(Side side) const {
  auto ticks = opposing_ticks(side);
  if (ticks.empty()) return std::nullopt;
  return ticks.front();
}

Money ReplayExchange::available(Side side, int tick) const {
  Money total;
  for (int t : opposing_ticks(side))
    if (crosses(side, t, tick)) total += displayed(opposing_side(side), t);
  return total;
}

Money ReplayExchange::take(Side side, int tick, Money wanted) {
  Money got;
  auto& consumed = opposing_side(side) == BookSide::Bid ? consumed_bids_ : consumed_asks_;
  for (int t : opposing_ticks(side)) {
    if (!crosses(side, t, tick) || got >= wanted) break;
    const Money part = std::min(wanted - got, displayed(opposing_side(side), t));
    consumed[t] += part;
    got += part;
  }
  return got;
}

BetId ReplayExchange::place(Side side, int tick, Money amount) {
  if (!has_frame_) fail(ErrorCode::InvalidArgument, "no frame received yet");
  if (!ladder_->contains(tick)) fail(ErrorCode::OffLadderPrice, "tick " + std::to_string(tick) + " is off the ladder");
  if (amount <= Money()) fail(ErrorCode::NonPositiveAmount, "bet amount must be positive");
  Entry e;
  e.bet.id = next_id_++;
  e.bet.side = side;
  e.bet.tick = tick;
  e.bet.requested = amount;
  e.bet.owner = agent_;
  e.bet.state = BetState::InProgress;
  const Money crossed = take(side, tick, amount);
  apply_fill(e.bet, tick, crossed);
  refresh_state(e.bet);
  e.bet.matched_on_placement = e.bet.matched;
  e.bet.queue_ahead = frame_.amount_at(own_side(side), tick);
  e.traded_at_placement = traded_at(frame_, tick);
  const BetId id = e.bet.id;
  bets_.emplace(id, std::move(e));
  return id;
}

Bet ReplayExchange::cancel(BetId id) {
  auto it = bets_.find(id);
  if (it == bets_.end()) fail(ErrorCode::UnknownBet, "unknown bet " + std::to_string(id));
  it->second.bet = cancel_bet(it->second.bet);
  return it->second.bet;
}

const Bet& ReplayExchange::bet(BetId id) const {
  auto it = bets_.find(id);
  if (it == bets_.end()) fail(ErrorCode::UnknownBet, "unknown bet " + std::to_string(id));
  return it->second.bet;
}

void ReplayExchange::force_fill(BetId id, int tick, Money amount) {
  auto it = bets_.find(id);
  if (it == bets_.end()) fail(ErrorCode::UnknownBet, "unknown bet " + std::to_string(id));
  apply_fill(it->second.bet, tick, amount);
}

void ReplayExchange::on_frame(const Frame& frame) {
  frame_ = frame;
  has_frame_ = true;
  // money the agent took stays gone only while the level still shows it
  for (auto* consumed : {&consumed_bids_, &consumed_asks_}) {
    const BookSide s = consumed == &consumed_bids_ ? BookSide::Bid : BookSide::Ask;
    for (auto it = consumed->begin(); it != consumed->end();) {
      it->second = std::min(it->second, frame_.amount_at(s, it->first));
      it = it->second.is_zero() ? consumed->erase(it) : std::next(it);
    }
  }
  for (auto& [id, e] : bets_) {
    Bet& b = e.bet;
    if (b.terminal()) continue;
    const Money volume_target = replay_fill_target(b, traded_at(frame_, b.tick) - e.traded_at_placement);
    Money target = std::min(b.requested, volume_target + e.through_filled);
    if (target < b.requested) {
      const Money through = take(b.side, b.tick, b.requested - target);
      e.through_filled += through;
      target += through;
    }
    if (target > b.matched) apply_fill(b, b.tick, target - b.matched);
  }
}

}  // namespace betlab
