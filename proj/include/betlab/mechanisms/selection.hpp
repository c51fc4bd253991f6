#pragma once

#include <array>
#include <memory>
#include <optional>

#include "betlab/mechanisms/session.hpp"

namespace betlab {

// Per-class mean of the maximum tick variation seen in training examples.
struct ClassStats {
  std::array<std::optional<double>, kMovementClasses> mean_max_variation{};
};

struct MechanismTicks {
  int target = 0;
  int stop = 0;
};

// target = round(|mean|); stop = round(0.8 target) for swing, round(0.6
// target) for trailing stop. Throws DegenerateTarget when target is 0.
MechanismTicks params_from_class(double class_mean, MechanismKind kind);
// Throws MissingClassStats when the class has no mean.
MechanismTicks params_from_class(const ClassStats& stats, MovementClass cls, MechanismKind kind);

struct MechanismChoice {
  MechanismKind kind;
  Direction direction;
  Side open;
};

// Strong moves trail, weak moves swing, neutral stays out.
std::optional<MechanismChoice> select_mechanism(MovementClass cls);

// Index of the largest probability; ties go to the lower class.
MovementClass predicted_class(const std::array<double, kMovementClasses>& probabilities);

struct SessionSetup {
  MechanismChoice choice;
  MechanismTicks ticks;
  int entry_tick = 0;
  Money stake;
  TimeParams time;
  bool front_line = true;
};

std::unique_ptr<TradeSession> make_session(const SessionSetup& s, const TickLadder& ladder = TickLadder::standard());

}  // namespace betlab
