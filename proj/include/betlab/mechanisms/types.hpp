#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "betlab/core/money.hpp"
#include "betlab/exchange/bet.hpp"

namespace betlab {

// Predicted direction of the odds.
enum class Direction { Up, Down };
std::string_view to_string(Direction d);

// Odds expected to rise: open with a Lay and close with a Back higher up.
constexpr Side open_side(Direction d) { return d == Direction::Up ? Side::Lay : Side::Back; }
constexpr Side close_side(Direction d) { return opposite(open_side(d)); }
// +1 when profit lies at higher ticks.
constexpr int favourable_sign(Direction d) { return d == Direction::Up ? 1 : -1; }

enum class TradeState { Starting, OpenPlaced, Open, ClosePlaced, ClosedProfit, ClosedNull, ClosedLoss, NotOpen };
std::string_view to_string(TradeState s);
constexpr bool is_terminal(TradeState s) {
  return s == TradeState::ClosedProfit || s == TradeState::ClosedNull || s == TradeState::ClosedLoss ||
         s == TradeState::NotOpen;
}

enum class MovementClass { StrongDown = 0, WeakDown = 1, Neutral = 2, WeakUp = 3, StrongUp = 4 };
constexpr int kMovementClasses = 5;
std::string_view to_string(MovementClass c);

enum class MechanismKind { Swing, TrailingStop };
std::string_view to_string(MechanismKind k);
// Trade log code: 1 swing, 2 trailing stop.
constexpr int mechanism_code(MechanismKind k) { return k == MechanismKind::Swing ? 1 : 2; }

struct TimeParams {
  int open = 20;
  int normal = 80;
  int emergency = 20;
};

struct ScalpParams {
  Money entry_amount;
  int entry_tick = 0;
  int wait_frames_normal = 80;
  int wait_frames_emergency = 20;
  Direction direction = Direction::Down;
};

struct SwingParams {
  Money entry_amount;
  int entry_tick = 0;
  int wait_frames_normal = 80;
  int wait_frames_emergency = 20;
  Direction direction = Direction::Down;
  int ticks_up = 1;
  int ticks_down = 1;
  bool front_line = true;
  int wait_frames_open = 20;

  static SwingParams from_scalp(const ScalpParams& p);
};

struct TrailingParams {
  Money stake_size;
  int entry_tick = 0;
  bool front_line = true;
  int wait_frames_open = 20;
  int wait_frames_normal = 80;
  int wait_frames_emergency = 20;
  Direction direction = Direction::Up;
  int offset = 1;
  // Optional take-profit distance; the close rests there while the stop trails.
  std::optional<int> target_ticks;
};

// Throws InvalidArgument when a parameter set breaks its invariants.
void validate(const SwingParams& p);
void validate(const TrailingParams& p);

}  // namespace betlab
