#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betlab/exchange/replay.hpp"
#include "betlab/exchange/settlement.hpp"
#include "betlab/mechanisms/types.hpp"

namespace betlab {

struct TranscriptEntry {
  int frame;
  TradeState state;
  std::string event;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct SessionReport {
  TradeState state = TradeState::Starting;
  Direction direction = Direction::Up;
  int entry_tick = 0;
  std::optional<int> target_tick;
  std::optional<int> stop_tick;
  Money open_matched;
  Money close_matched;
  std::optional<double> open_price;   // amount-weighted
  std::optional<double> close_price;  // amount-weighted
  OutcomePl outcome;
  Money pl;  // runner-loses branch, exact in pennies
  std::optional<int> moved_ticks;  // from entry to the averaged close price, favourable positive
  int frames = 0;
};

// Common machinery for one trade on one runner: a private replay exchange,
// the open bet, successive close bets and a transcript of state changes.
// Frames are fed in order through step(); finish() resolves whatever is left
// when the data ends.
class TradeSession {
 public:
  virtual ~TradeSession() = default;

  void step(const Frame& frame);
  void finish();

  TradeState state() const { return state_; }
  bool terminal() const { return is_terminal(state_); }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  SessionReport report() const;
  const ReplayExchange& exchange() const { return exchange_; }
  // Current market tick ("price back now"): last traded price.
  std::optional<int> pbn() const { return pbn_; }

 protected:
  TradeSession(const TickLadder& ladder, Direction direction, int entry_tick, Money amount, bool front_line,
               int open_wait, int emergency_horizon);

  // Called once the open is (at least partly) matched and no longer pending.
  virtual void on_open() = 0;
  // Called every later frame while a close is being worked.
  virtual void on_close_frame() = 0;

  void record(TradeState s, std::string event);
  void place_close(int tick, const char* why);
  void place_marketable_close(const char* why);
  void place_best_price_close(const char* why);
  void enter_emergency();
  void emergency_frame();
  void force_settle(const char* why);
  bool flat() const;
  void conclude();
  PositionLedger ledger() const;
  bool adverse_reached(int stop) const;
  bool favourable_reached(int target) const;
  std::string price(int tick) const;

  const TickLadder* ladder_;
  ReplayExchange exchange_;
  Direction direction_;
  int entry_tick_;
  Money amount_;
  bool front_line_;
  int open_wait_;
  int emergency_horizon_;
  std::optional<int> target_tick_;
  std::optional<int> stop_tick_;

  TradeState state_ = TradeState::Starting;
  int frame_ = -1;
  std::optional<int> pbn_;
  std::optional<int> pbp_;  // previous frame's pbn
  std::optional<BetId> open_bet_;
  std::vector<BetId> close_bets_;
  int frames_in_state_ = 0;
  bool emergency_ = false;
  int emergency_frames_ = 0;
  std::vector<TranscriptEntry> transcript_;

 private:
  void start();
  void check_open();
  Money consistent_close_amount(Side side, int tick, Money base) const;
};

// Fixed profit and stop offsets around the entry. With one tick each way
// this is a scalp.
class SwingSession : public TradeSession {
 public:
  explicit SwingSession(const SwingParams& p, const TickLadder& ladder = TickLadder::standard());

 protected:
  void on_open() override;
  void on_close_frame() override;

 private:
  enum class Phase { Target, Null } phase_ = Phase::Target;
  SwingParams p_;
};

class ScalpSession : public SwingSession {
 public:
  explicit ScalpSession(const ScalpParams& p, const TickLadder& ladder = TickLadder::standard())
      : SwingSession(SwingParams::from_scalp(p), ladder) {}
};

// Close price trails the market by `offset` ticks and only moves when the
// market moves the predicted way.
class TrailingSession : public TradeSession {
 public:
  explicit TrailingSession(const TrailingParams& p, const TickLadder& ladder = TickLadder::standard());

  // Price to close at ("price lay to close"), once open.
  std::optional<int> plc() const { return plc_; }
  const std::vector<int>& plc_history() const { return plc_history_; }

 protected:
  void on_open() override;
  void on_close_frame() override;

 private:
  enum class Phase { Trailing, Stop, BestPrice } phase_ = Phase::Trailing;
  TrailingParams p_;
  std::optional<int> plc_;
  std::vector<int> plc_history_;
  int stage_start_ = 0;
};

}  // namespace betlab
