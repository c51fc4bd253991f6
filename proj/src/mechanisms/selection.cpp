#include "betlab/mechanisms/selection.hpp"

#include <cmath>

#include "betlab/core/error.hpp"

namespace betlab {

MechanismTicks params_from_class(double class_mean, MechanismKind kind) {
  const int target = static_cast<int>(std::lround(std::fabs(class_mean)));
  if (target == 0) fail(ErrorCode::DegenerateTarget, "class mean rounds to a zero-tick target");
  const double share = kind == MechanismKind::Swing ? 0.8 : 0.6;
  return {target, static_cast<int>(std::lround(share * target))};
}

MechanismTicks params_from_class(const ClassStats& stats, MovementClass cls, MechanismKind kind) {
  const auto& mean = stats.mean_max_variation[static_cast<std::size_t>(cls)];
  if (!mean) fail(ErrorCode::MissingClassStats, "no statistics for class " + std::string(to_string(cls)));
  return params_from_class(*mean, kind);
}

std::optional<MechanismChoice> select_mechanism(MovementClass cls) {
  switch (cls) {
    case MovementClass::StrongUp: return MechanismChoice{MechanismKind::TrailingStop, Direction::Up, Side::Lay};
    case MovementClass::WeakUp: return MechanismChoice{MechanismKind::Swing, Direction::Up, Side::Lay};
    case MovementClass::WeakDown: return MechanismChoice{MechanismKind::Swing, Direction::Down, Side::Back};
    case MovementClass::StrongDown: return MechanismChoice{MechanismKind::TrailingStop, Direction::Down, Side::Back};
    case MovementClass::Neutral: return std::nullopt;
  }
  return std::nullopt;
}

MovementClass predicted_class(const std::array<double, kMovementClasses>& probabilities) {
  int best = 0;
  for (int i = 1; i < kMovementClasses; ++i)
    if (probabilities[i] > probabilities[best]) best = i;
  return static_cast<MovementClass>(best);
}

std::unique_ptr<TradeSession> make_session(const SessionSetup& s, const TickLadder& ladder) {
  if (s.choice.kind == MechanismKind::Swing) {
    SwingParams p;
    p.entry_amount = s.stake;
    p.entry_tick = s.entry_tick;
    p.direction = s.choice.direction;
    p.ticks_up = s.choice.direction == Direction::Up ? s.ticks.target : s.ticks.stop;
    p.ticks_down = s.choice.direction == Direction::Up ? s.ticks.stop : s.ticks.target;
    p.front_line = s.front_line;
    p.wait_frames_open = s.time.open;
    p.wait_frames_normal = s.time.normal;
    p.wait_frames_emergency = s.time.emergency;
    return std::make_unique<SwingSession>(p, ladder);
  }
  TrailingParams p;
  p.stake_size = s.stake;
  p.entry_tick = s.entry_tick;
  p.direction = s.choice.direction;
  p.offset = s.ticks.stop;
  p.target_ticks = s.ticks.target;
  p.front_line = s.front_line;
  p.wait_frames_open = s.time.open;
  p.wait_frames_normal = s.time.normal;
  p.wait_frames_emergency = s.time.emergency;
  return std::make_unique<TrailingSession>(p, ladder);
}

}  // namespace betlab
