#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "betlab/features/indicators.hpp"
#include "betlab/ladder/frame.hpp"

namespace betlab {

inline constexpr std::size_t kWindowFrames = 512;
inline constexpr std::size_t kSegmentFrames = 4;
inline constexpr std::size_t kTimeSteps = kWindowFrames / kSegmentFrames;
inline constexpr std::size_t kVariables = 9;
inline constexpr std::size_t kTargetFrames = 240;

// Row-major timesteps x variables.
struct FeatureMatrix {
  std::size_t rows = kTimeSteps;
  std::size_t cols = kVariables;
  std::vector<double> data = std::vector<double>(kTimeSteps * kVariables, 0.0);

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

// Column order:
//   0 price integral (runner)      1 price integral (competitor)
//   2 ask liquidity delta          3 bid liquidity delta
//   4 volume direction             5 ticks from start (runner)
//   6 ticks from start (competitor)
//   7 weight of money (runner)     8 weight of money (other runners)
struct ExampleFrames {
  FrameSpan runner;
  FrameSpan competitor;
  std::vector<FrameSpan> others;  // every runner except `runner`
};

// Uses the trailing 512 frames of each span. Spans should come from an
// aligned market, where a missing frame repeats the previous one.
FeatureMatrix build_example(const ExampleFrames& frames, int wom_depth);

// Index of the runner whose last traded price at `frame` is closest in ticks
// to `runner`'s; `runner` itself when it is alone.
std::size_t competitor_of(const Market& aligned, std::size_t runner, std::size_t frame);

// Runs build_example on runner `runner` of an aligned market for the 512
// frames ending just before `end_frame`.
FeatureMatrix build_example(const Market& aligned, std::size_t runner, std::size_t end_frame, int wom_depth);

// Same integral as the price indicator over the first 240 frames.
double target_integral(FrameSpan frames);
// Signed tick excursion with the largest magnitude over the first 240 frames.
int max_tick_variation(FrameSpan frames);

}  // namespace betlab
