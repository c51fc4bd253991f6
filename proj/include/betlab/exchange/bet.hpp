#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "betlab/core/money.hpp"
#include "betlab/ladder/tick_ladder.hpp"

namespace betlab {

enum class Side { Back, Lay };

constexpr Side opposite(Side s) { return s == Side::Back ? Side::Lay : Side::Back; }
std::string_view to_string(Side s);

enum class BetState { InProgress, Unmatched, PartiallyMatched, Matched, Cancelled };
std::string_view to_string(BetState s);

using BetId = std::uint64_t;
using OwnerId = std::uint32_t;
// Liquidity loaded from recorded depth belongs to nobody in particular.
constexpr OwnerId kMarketOwner = 0;

struct BetFill {
  int tick;
  Money amount;
};

struct Bet {
  BetId id = 0;
  Side side = Side::Back;
  int tick = 0;
  Money requested;
  Money matched;
  Money cancelled;
  Money matched_on_placement;  // crossed immediately when placed
  Money queue_ahead;           // same-price money that must trade first
  BetState state = BetState::InProgress;
  OwnerId owner = kMarketOwner;
  std::vector<BetFill> fills;

  Money unmatched() const { return requested - matched - cancelled; }
  bool terminal() const { return state == BetState::Matched || state == BetState::Cancelled; }
  // Amount-weighted price of all fills; throws EmptyFills when nothing matched.
  double average_price(const TickLadder& ladder = TickLadder::standard()) const;
};

// Records a fill and moves the state along Unmatched -> PartiallyMatched -> Matched.
void apply_fill(Bet& bet, int tick, Money amount);
// Settles the state after placement or a fill.
void refresh_state(Bet& bet);

// Cancels the unmatched remainder. Throws AlreadyTerminal.
Bet cancel_bet(Bet bet);

// Worst-case queue rule for recorded data: the bet only starts filling once
// the volume traded at its price since placement exceeds the money that was
// queued ahead of it. `traded_since_placement` is cumulative.
Bet step_replay_fill(Bet bet, Money traded_since_placement);
// Matched amount the rule above allows, before comparing with what already matched.
Money replay_fill_target(const Bet& bet, Money traded_since_placement);

}  // namespace betlab
