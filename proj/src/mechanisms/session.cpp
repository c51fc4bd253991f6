#include "betlab/mechanisms/session.hpp"

#include <cstdlib>

#include "betlab/core/error.hpp"

namespace betlab {

TradeSession::TradeSession(const TickLadder& ladder, Direction direction, int entry_tick, Money amount,
                           bool front_line, int open_wait, int emergency_horizon)
    : ladder_(&ladder),
      exchange_(ladder),
      direction_(direction),
      entry_tick_(entry_tick),
      amount_(amount),
      front_line_(front_line),
      open_wait_(open_wait),
      emergency_horizon_(emergency_horizon) {
  if (!ladder.contains(entry_tick)) fail(ErrorCode::OffLadderPrice, "entry tick is off the ladder");
}

std::string TradeSession::price(int tick) const { return ladder_->price_at(tick).str(); }

void TradeSession::record(TradeState s, std::string event) {
  state_ = s;
  transcript_.push_back({frame_, s, std::move(event)});
}

void TradeSession::step(const Frame& frame) {
  if (terminal()) return;
  ++frame_;
  exchange_.on_frame(frame);
  pbp_ = pbn_;
  if (frame.last_traded) pbn_ = frame.last_traded;
  switch (state_) {
    case TradeState::Starting:
      start();
      break;
    case TradeState::OpenPlaced:
      ++frames_in_state_;
      check_open();
      break;
    case TradeState::ClosePlaced:
      ++frames_in_state_;
      if (flat()) {
        conclude();
        break;
      }
      if (emergency_)
        emergency_frame();
      else
        on_close_frame();
      if (!terminal() && flat()) conclude();
      break;
    default:
      break;
  }
}

void TradeSession::start() {
  if (front_line_ && pbn_ != entry_tick_) {
    record(TradeState::NotOpen, "price moved before open");
    return;
  }
  open_bet_ = exchange_.place(open_side(direction_), entry_tick_, amount_);
  record(TradeState::OpenPlaced,
         "open " + std::string(to_string(open_side(direction_))) + " " + amount_.str() + "@" + price(entry_tick_));
  frames_in_state_ = 0;
  check_open();
}

void TradeSession::check_open() {
  const Bet& b = exchange_.bet(*open_bet_);
  if (b.state != BetState::Matched) {
    if (frames_in_state_ < open_wait_) return;
    exchange_.cancel(*open_bet_);
    if (exchange_.bet(*open_bet_).matched.is_zero()) {
      record(TradeState::NotOpen, "open unmatched, cancelled");
      return;
    }
  }
  record(TradeState::Open, "open matched " + exchange_.bet(*open_bet_).matched.str());
  frames_in_state_ = 0;
  on_open();
  if (!terminal() && flat()) conclude();
}

PositionLedger TradeSession::ledger() const {
  PositionLedger p;
  if (open_bet_) p.add(exchange_.bet(*open_bet_), *ladder_);
  for (BetId id : close_bets_) p.add(exchange_.bet(id), *ladder_);
  return p;
}

bool TradeSession::flat() const {
  if (!open_bet_ || exchange_.bet(*open_bet_).matched.is_zero() || close_bets_.empty()) return false;
  return exchange_.bet(close_bets_.back()).state == BetState::Matched;
}

bool TradeSession::adverse_reached(int stop) const {
  return pbn_ && favourable_sign(direction_) * (*pbn_ - stop) <= 0;
}

bool TradeSession::favourable_reached(int target) const {
  return pbn_ && favourable_sign(direction_) * (*pbn_ - target) >= 0;
}

Money TradeSession::consistent_close_amount(Side side, int tick, Money base) const {
  // When a close is spread over several prices the total must still equal
  // the hedge formula applied at the averaged close price, otherwise the
  // logged amounts would not reproduce the logged result.
  __int128 open_notional = 0;
  for (const auto& f : exchange_.bet(*open_bet_).fills)
    open_notional += static_cast<__int128>(ladder_->price_at(f.tick).in_hundredths()) * f.amount.in_pennies();
  __int128 close_notional = 0;
  std::int64_t close_amount = 0;
  for (BetId id : close_bets_) {
    const Bet& b = exchange_.bet(id);
    if (b.side != side) continue;
    for (const auto& f : b.fills) {
      close_notional += static_cast<__int128>(ladder_->price_at(f.tick).in_hundredths()) * f.amount.in_pennies();
      close_amount += f.amount.in_pennies();
    }
  }
  if (close_amount == 0) return base;
  const std::int64_t p = ladder_->price_at(tick).in_hundredths();
  for (int d : {0, -1, 1, -2, 2, -3, 3}) {
    const std::int64_t x = base.in_pennies() + d;
    if (x <= 0) continue;
    const std::int64_t total = close_amount + x;
    const __int128 notional = close_notional + static_cast<__int128>(x) * p;
    const __int128 num = open_notional * total;
    const __int128 err = num - static_cast<__int128>(total) * notional;  // in units of `notional`
    // |recomputed - total| < 0.4 penny keeps the check robust to printed decimals
    if (err * 10 < notional * 4 && -err * 10 < notional * 4) return Money::pennies(x);
  }
  return base;
}

void TradeSession::place_close(int tick, const char* why) {
  tick = ladder_->clamp(tick);
  if (!close_bets_.empty() && !exchange_.bet(close_bets_.back()).terminal()) exchange_.cancel(close_bets_.back());
  auto h = hedge_for(ledger().outcome(), ladder_->price_at(tick));
  if (!h) {
    conclude();
    return;
  }
  const Money amount = consistent_close_amount(h->side, tick, h->amount);
  close_bets_.push_back(exchange_.place(h->side, tick, amount));
  record(TradeState::ClosePlaced,
         std::string(why) + " " + std::string(to_string(h->side)) + " " + amount.str() + "@" + price(tick));
}

void TradeSession::place_marketable_close(const char* why) {
  const Side side = close_side(direction_);
  auto ticks = exchange_.opposing_ticks(side);
  if (ticks.empty()) {
    place_close(pbn_.value_or(entry_tick_), why);
    return;
  }
  int chosen = ticks.back();
  for (int t : ticks) {
    auto h = hedge_for(ledger().outcome(), ladder_->price_at(t));
    if (!h || exchange_.available(side, t) >= h->amount) {
      chosen = t;
      break;
    }
  }
  if (!close_bets_.empty()) {
    const Bet& last = exchange_.bet(close_bets_.back());
    if (!last.terminal() && last.tick == chosen) return;
  }
  place_close(chosen, why);
}

void TradeSession::place_best_price_close(const char* why) {
  auto best = exchange_.best_opposing(close_side(direction_));
  const int tick = best.value_or(pbn_.value_or(entry_tick_));
  if (!close_bets_.empty()) {
    const Bet& last = exchange_.bet(close_bets_.back());
    if (!last.terminal() && last.tick == tick) return;
  }
  place_close(tick, why);
}

void TradeSession::enter_emergency() {
  emergency_ = true;
  emergency_frames_ = 0;
  place_marketable_close("emergency close");
}

void TradeSession::emergency_frame() {
  ++emergency_frames_;
  if (emergency_frames_ >= emergency_horizon_) {
    force_settle("emergency horizon, settled");
    return;
  }
  place_marketable_close("emergency close");
}

void TradeSession::force_settle(const char* why) {
  const int tick = pbn_.value_or(entry_tick_);
  if (!close_bets_.empty() && !exchange_.bet(close_bets_.back()).terminal()) exchange_.cancel(close_bets_.back());
  auto h = hedge_for(ledger().outcome(), ladder_->price_at(tick));
  if (h) {
    const Money amount = consistent_close_amount(h->side, tick, h->amount);
    const BetId id = exchange_.place(h->side, tick, amount);
    close_bets_.push_back(id);
    const Money rest = exchange_.bet(id).unmatched();
    if (rest > Money()) exchange_.force_fill(id, tick, rest);
    record(TradeState::ClosePlaced,
           std::string(why) + " " + std::string(to_string(h->side)) + " " + amount.str() + "@" + price(tick));
  }
  conclude();
}

void TradeSession::conclude() {
  if (open_bet_ && !exchange_.bet(*open_bet_).terminal()) exchange_.cancel(*open_bet_);
  for (BetId id : close_bets_)
    if (!exchange_.bet(id).terminal()) exchange_.cancel(id);
  const Money pl = ledger().outcome().if_loses.rounded();
  const TradeState s = pl > Money() ? TradeState::ClosedProfit
                     : pl < Money() ? TradeState::ClosedLoss
                                    : TradeState::ClosedNull;
  record(s, "closed " + pl.str());
}

void TradeSession::finish() {
  if (terminal()) return;
  switch (state_) {
    case TradeState::Starting:
      record(TradeState::NotOpen, "no frames");
      return;
    case TradeState::OpenPlaced:
      exchange_.cancel(*open_bet_);
      if (exchange_.bet(*open_bet_).matched.is_zero()) {
        record(TradeState::NotOpen, "market closed before open matched");
        return;
      }
      force_settle("market closed, settled");
      return;
    default:
      force_settle("market closed, settled");
      return;
  }
}

SessionReport TradeSession::report() const {
  SessionReport r;
  r.state = state_;
  r.direction = direction_;
  r.entry_tick = entry_tick_;
  r.target_tick = target_tick_;
  r.stop_tick = stop_tick_;
  r.frames = frame_ + 1;
  const PositionLedger p = ledger();
  r.outcome = p.outcome();
  r.pl = p.outcome().if_loses.rounded();
  if (open_bet_) {
    const Bet& b = exchange_.bet(*open_bet_);
    r.open_matched = b.matched;
    if (!b.matched.is_zero()) r.open_price = b.average_price(*ladder_);
  }
  std::vector<PriceAmount> closes;
  for (BetId id : close_bets_)
    for (const auto& f : exchange_.bet(id).fills) closes.push_back({ladder_->price_at(f.tick), f.amount});
  for (const auto& c : closes) r.close_matched += c.amount;
  if (!closes.empty()) {
    r.close_price = matched_price_average(closes);
    r.moved_ticks = favourable_sign(direction_) * (ladder_->nearest_tick(*r.close_price) - entry_tick_);
  }
  return r;
}

SwingSession::SwingSession(const SwingParams& p, const TickLadder& ladder)
    : TradeSession(ladder, p.direction, p.entry_tick, p.entry_amount, p.front_line,
                   p.front_line ? p.wait_frames_normal : p.wait_frames_open, p.wait_frames_emergency),
      p_(p) {
  validate(p);
  const bool up = p.direction == Direction::Up;
  target_tick_ = ladder.clamp(up ? p.entry_tick + p.ticks_up : p.entry_tick - p.ticks_down);
  stop_tick_ = ladder.clamp(up ? p.entry_tick - p.ticks_down : p.entry_tick + p.ticks_up);
}

void SwingSession::on_open() {
  phase_ = Phase::Target;
  place_close(*target_tick_, "close at target");
}

void SwingSession::on_close_frame() {
  if (adverse_reached(*stop_tick_)) {
    enter_emergency();
    return;
  }
  if (phase_ == Phase::Target && frames_in_state_ >= p_.wait_frames_normal) {
    phase_ = Phase::Null;
    place_close(entry_tick_, "null close at entry");
    return;
  }
  if (phase_ == Phase::Null && frames_in_state_ >= p_.wait_frames_normal + p_.wait_frames_emergency) enter_emergency();
}

TrailingSession::TrailingSession(const TrailingParams& p, const TickLadder& ladder)
    : TradeSession(ladder, p.direction, p.entry_tick, p.stake_size, p.front_line,
                   p.front_line ? p.wait_frames_normal : p.wait_frames_open, p.wait_frames_emergency),
      p_(p) {
  validate(p);
  const int sign = favourable_sign(p.direction);
  stop_tick_ = ladder.clamp(p.entry_tick - sign * p.offset);
  if (p.target_ticks) target_tick_ = ladder.clamp(p.entry_tick + sign * *p.target_ticks);
}

void TrailingSession::on_open() {
  const int sign = favourable_sign(direction_);
  plc_ = ladder_->clamp(pbn_.value_or(entry_tick_) - sign * p_.offset);
  plc_history_.push_back(*plc_);
  phase_ = Phase::Trailing;
  if (target_tick_)
    place_close(*target_tick_, "close at target");
  else
    record(TradeState::ClosePlaced, "trailing from " + price(*plc_));
}

void TrailingSession::on_close_frame() {
  const int sign = favourable_sign(direction_);
  switch (phase_) {
    case Phase::Trailing: {
      if (pbn_ && pbp_ && sign * (*pbn_ - *pbp_) > 0) {
        const int candidate = ladder_->clamp(*pbn_ - sign * p_.offset);
        if (sign * (candidate - *plc_) > 0) {
          plc_ = candidate;
          plc_history_.push_back(candidate);
          record(TradeState::ClosePlaced, "stop moved to " + price(candidate));
        }
      }
      if (pbn_ && sign * (*pbn_ - *plc_) <= 0) {
        phase_ = Phase::Stop;
        stage_start_ = frames_in_state_;
        place_close(*plc_, "stop close");
      } else if (frames_in_state_ >= p_.wait_frames_normal) {
        phase_ = Phase::BestPrice;
        stage_start_ = frames_in_state_;
        place_best_price_close("close at best price");
      }
      return;
    }
    case Phase::Stop:
      if (frames_in_state_ - stage_start_ >= p_.wait_frames_emergency) enter_emergency();
      return;
    case Phase::BestPrice:
      if (frames_in_state_ - stage_start_ >= p_.wait_frames_emergency)
        enter_emergency();
      else
        place_best_price_close("close at best price");
      return;
  }
}

}  // namespace betlab
