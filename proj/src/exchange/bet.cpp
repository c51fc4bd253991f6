#include "betlab/exchange/bet.hpp"

#include <algorithm>

#include "betlab/core/error.hpp"
#include "betlab/exchange/settlement.hpp"

namespace betlab {

std::string_view to_string(Side s) { return s == Side::Back ? "Back" : "Lay"; }

std::string_view to_string(BetState s) {
  switch (s) {
    case BetState::InProgress: return "InProgress";
    case BetState::Unmatched: return "Unmatched";
    case BetState::PartiallyMatched: return "PartiallyMatched";
    case BetState::Matched: return "Matched";
    case BetState::Cancelled: return "Cancelled";
  }
  return "?";
}

double Bet::average_price(const TickLadder& ladder) const {
  std::vector<PriceAmount> pa;
  pa.reserve(fills.size());
  for (const auto& f : fills) pa.push_back({ladder.price_at(f.tick), f.amount});
  return matched_price_average(pa);
}

void refresh_state(Bet& bet) {
  if (bet.state == BetState::Cancelled) return;
  if (bet.matched.is_zero())
    bet.state = BetState::Unmatched;
  else if (bet.matched < bet.requested)
    bet.state = BetState::PartiallyMatched;
  else
    bet.state = BetState::Matched;
}

void apply_fill(Bet& bet, int tick, Money amount) {
  if (amount <= Money()) return;
  if (bet.terminal()) fail(ErrorCode::AlreadyTerminal, "fill on a terminal bet");
  if (amount > bet.unmatched()) fail(ErrorCode::InvalidArgument, "fill exceeds the unmatched amount");
  bet.matched += amount;
  if (!bet.fills.empty() && bet.fills.back().tick == tick)
    bet.fills.back().amount += amount;
  else
    bet.fills.push_back({tick, amount});
  refresh_state(bet);
}

Bet cancel_bet(Bet bet) {
  if (bet.terminal()) fail(ErrorCode::AlreadyTerminal, "bet " + std::to_string(bet.id) + " is already terminal");
  bet.cancelled += bet.unmatched();
  bet.state = BetState::Cancelled;
  return bet;
}

Money replay_fill_target(const Bet& bet, Money traded_since_placement) {
  const Money past_queue = std::max(Money(), traded_since_placement - bet.queue_ahead);
  return std::min(bet.requested - bet.cancelled, bet.matched_on_placement + past_queue);
}

Bet step_replay_fill(Bet bet, Money traded_since_placement) {
  if (bet.terminal()) return bet;
  const Money target = replay_fill_target(bet, traded_since_placement);
  if (target > bet.matched) apply_fill(bet, bet.tick, target - bet.matched);
  return bet;
}

}  // namespace betlab
