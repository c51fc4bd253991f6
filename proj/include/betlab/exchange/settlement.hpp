#pragma once

#include <optional>
#include <vector>

#include "betlab/core/money.hpp"
#include "betlab/exchange/bet.hpp"

namespace betlab {

struct PriceAmount {
  Odds price;
  Money amount;
};

// Amount-weighted average price. Throws EmptyFills / NonPositiveAmount.
double matched_price_average(const std::vector<PriceAmount>& fills);

// amount * (price - 1), exact.
PreciseMoney profit_back(Money amount, Odds price);
PreciseMoney liability_lay(Money amount, Odds price);

// open_price / close_price * open_amount, unrounded, in pounds.
double close_amount_exact(Odds open_price, Money open_amount, Odds close_price);
// Same, rounded half-to-even to the penny.
Money close_amount_lay(Odds open_back_price, Money open_back_amount, Odds lay_close_price);
Money close_amount_back(Odds open_lay_price, Money open_lay_amount, Odds back_close_price);

// Profit or loss of a set of matched bets on a single runner for each race outcome.
struct OutcomePl {
  PreciseMoney if_wins;
  PreciseMoney if_loses;

  PreciseMoney imbalance() const { return if_wins - if_loses; }
};

OutcomePl outcome_of(Side side, Odds price, Money amount);

class PositionLedger {
 public:
  void add(Side side, Odds price, Money amount);
  void add(const Bet& bet, const TickLadder& ladder = TickLadder::standard());

  const OutcomePl& outcome() const { return pl_; }
  Money backed() const { return backed_; }
  Money laid() const { return laid_; }
  bool green() const { return pl_.if_wins == pl_.if_loses; }

 private:
  OutcomePl pl_;
  Money backed_;
  Money laid_;
};

struct Hedge {
  Side side;
  Money amount;  // rounded half-to-even
  double exact;  // pounds
};

// Counter bet at `close_price` that equalises both outcomes. A runner-wins
// surplus is reduced with a Lay, a deficit with a Back. Empty when the
// position is already green or the rounded amount is zero.
std::optional<Hedge> hedge_for(const OutcomePl& pl, Odds close_price);

// Summary of an open position on one runner.
struct Position {
  std::string runner_id;
  enum class OpenSide { Back, Lay, Flat } open_side = OpenSide::Flat;
  Money open_amount;
  int open_tick = 0;
  Money realized_pl;
};

}  // namespace betlab
