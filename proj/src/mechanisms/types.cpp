#include "betlab/mechanisms/types.hpp"

#include "betlab/core/error.hpp"

namespace betlab {

std::string_view to_string(Direction d) { return d == Direction::Up ? "Up" : "Down"; }

std::string_view to_string(TradeState s) {
  switch (s) {
    case TradeState::Starting: return "Starting";
    case TradeState::OpenPlaced: return "OpenPlaced";
    case TradeState::Open: return "Open";
    case TradeState::ClosePlaced: return "ClosePlaced";
    case TradeState::ClosedProfit: return "ClosedProfit";
    case TradeState::ClosedNull: return "ClosedNull";
    case TradeState::ClosedLoss: return "ClosedLoss";
    case TradeState::NotOpen: return "NotOpen";
  }
  return "?";
}

std::string_view to_string(MovementClass c) {
  switch (c) {
    case MovementClass::StrongDown: return "StrongDown";
    case MovementClass::WeakDown: return "WeakDown";
    case MovementClass::Neutral: return "Neutral";
    case MovementClass::WeakUp: return "WeakUp";
    case MovementClass::StrongUp: return "StrongUp";
  }
  return "?";
}

std::string_view to_string(MechanismKind k) { return k == MechanismKind::Swing ? "Swing" : "TrailingStop"; }

SwingParams SwingParams::from_scalp(const ScalpParams& p) {
  SwingParams s;
  s.entry_amount = p.entry_amount;
  s.entry_tick = p.entry_tick;
  s.wait_frames_normal = p.wait_frames_normal;
  s.wait_frames_emergency = p.wait_frames_emergency;
  s.direction = p.direction;
  s.ticks_up = 1;
  s.ticks_down = 1;
  s.front_line = true;
  return s;
}

void validate(const SwingParams& p) {
  if (p.entry_amount <= Money()) fail(ErrorCode::NonPositiveAmount, "swing entry amount must be positive");
  if (p.ticks_up <= 0 || p.ticks_down <= 0) fail(ErrorCode::InvalidArgument, "swing tick offsets must be positive");
  if (p.wait_frames_normal <= 0 || p.wait_frames_emergency <= 0 || p.wait_frames_open <= 0)
    fail(ErrorCode::InvalidArgument, "swing frame counts must be positive");
}

void validate(const TrailingParams& p) {
  if (p.stake_size <= Money()) fail(ErrorCode::NonPositiveAmount, "trailing stake must be positive");
  if (p.offset < 1) fail(ErrorCode::InvalidArgument, "trailing offset must be at least one tick");
  if (p.target_ticks && *p.target_ticks <= 0) fail(ErrorCode::InvalidArgument, "trailing target must be positive");
  if (p.wait_frames_normal <= 0 || p.wait_frames_emergency <= 0 || p.wait_frames_open <= 0)
    fail(ErrorCode::InvalidArgument, "trailing frame counts must be positive");
}

}  // namespace betlab
