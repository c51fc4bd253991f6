#include "betlab/exchange/settlement.hpp"

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

// pennies * hundredths = ten-thousandths of a pound
PreciseMoney times(Money amount, std::int64_t hundredths) {
  return PreciseMoney::units(amount.in_pennies() * hundredths);
}

}  // namespace

double matched_price_average(const std::vector<PriceAmount>& fills) {
  if (fills.empty()) fail(ErrorCode::EmptyFills, "no fills to average");
  __int128 weighted = 0;
  std::int64_t total = 0;
  for (const auto& f : fills) {
    if (f.amount <= Money()) fail(ErrorCode::NonPositiveAmount, "fill amount must be positive");
    weighted += static_cast<__int128>(f.price.in_hundredths()) * f.amount.in_pennies();
    total += f.amount.in_pennies();
  }
  return static_cast<double>(weighted) / static_cast<double>(total) / 100.0;
}

PreciseMoney profit_back(Money amount, Odds price) { return times(amount, price.in_hundredths() - 100); }

PreciseMoney liability_lay(Money amount, Odds price) { return times(amount, price.in_hundredths() - 100); }

double close_amount_exact(Odds open_price, Money open_amount, Odds close_price) {
  return open_price.as_double() / close_price.as_double() * open_amount.as_double();
}

namespace {

Money close_amount(Odds open_price, Money open_amount, Odds close_price) {
  if (open_amount <= Money()) fail(ErrorCode::NonPositiveAmount, "open amount must be positive");
  if (close_price.in_hundredths() <= 0) fail(ErrorCode::InvalidArgument, "close price must be positive");
  const __int128 num = static_cast<__int128>(open_price.in_hundredths()) * open_amount.in_pennies();
  return Money::pennies(div_round_half_even(num, close_price.in_hundredths()));
}

}  // namespace

Money close_amount_lay(Odds open_back_price, Money open_back_amount, Odds lay_close_price) {
  return close_amount(open_back_price, open_back_amount, lay_close_price);
}

Money close_amount_back(Odds open_lay_price, Money open_lay_amount, Odds back_close_price) {
  return close_amount(open_lay_price, open_lay_amount, back_close_price);
}

OutcomePl outcome_of(Side side, Odds price, Money amount) {
  const PreciseMoney stake = PreciseMoney::from(amount);
  const PreciseMoney swing = times(amount, price.in_hundredths() - 100);
  if (side == Side::Back) return {swing, -stake};
  return {-swing, stake};
}

void PositionLedger::add(Side side, Odds price, Money amount) {
  const OutcomePl o = outcome_of(side, price, amount);
  pl_.if_wins += o.if_wins;
  pl_.if_loses += o.if_loses;
  (side == Side::Back ? backed_ : laid_) += amount;
}

void PositionLedger::add(const Bet& bet, const TickLadder& ladder) {
  for (const auto& f : bet.fills) add(bet.side, ladder.price_at(f.tick), f.amount);
}

std::optional<Hedge> hedge_for(const OutcomePl& pl, Odds close_price) {
  if (close_price.in_hundredths() <= 100) fail(ErrorCode::InvalidArgument, "close price must exceed 1");
  const std::int64_t diff = pl.imbalance().in_units();
  if (diff == 0) return std::nullopt;
  const std::int64_t magnitude = diff < 0 ? -diff : diff;
  // units / hundredths = pennies
  const Money amount = Money::pennies(div_round_half_even(magnitude, close_price.in_hundredths()));
  if (amount.is_zero()) return std::nullopt;
  const double exact = static_cast<double>(magnitude) / close_price.in_hundredths() / 100.0;
  return Hedge{diff > 0 ? Side::Lay : Side::Back, amount, exact};
}

}  // namespace betlab
