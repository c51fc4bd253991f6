#include "betlab/features/example.hpp"

#include <cstdlib>
#include <limits>

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

FrameSpan window_of(FrameSpan frames, const char* what) {
  if (frames.size() < kWindowFrames)
    fail(ErrorCode::InsufficientFrames,
         std::string(what) + " has " + std::to_string(frames.size()) + " frames, need " +
             std::to_string(kWindowFrames));
  return frames.subspan(frames.size() - kWindowFrames);
}

std::optional<int> traded_tick(const Frame& f) { return f.last_traded; }

int tick_or(const Frame& f, int fallback) { return traded_tick(f).value_or(fallback); }

}  // namespace

FeatureMatrix build_example(const ExampleFrames& frames, int wom_depth) {
  const FrameSpan runner = window_of(frames.runner, "runner");
  const FrameSpan competitor = window_of(frames.competitor, "competitor");
  std::vector<FrameSpan> others;
  for (const auto& o : frames.others) others.push_back(window_of(o, "runner"));

  FeatureMatrix out;
  for (std::size_t step = 0; step < kTimeSteps; ++step) {
    const std::size_t begin = step * kSegmentFrames;
    const FrameSpan seg = runner.subspan(begin, kSegmentFrames);
    const FrameSpan cseg = competitor.subspan(begin, kSegmentFrames);
    out.at(step, 0) = indicator_price_integral(seg);
    out.at(step, 1) = indicator_price_integral(cseg);
    out.at(step, 2) = indicator_liquidity_delta(seg, BookSide::Ask);
    out.at(step, 3) = indicator_liquidity_delta(seg, BookSide::Bid);
    out.at(step, 4) = indicator_volume_direction(seg);
    out.at(step, 5) = indicator_price_diff_from_start(runner.front(), seg);
    out.at(step, 6) = indicator_price_diff_from_start(competitor.front(), cseg);
    out.at(step, 7) = indicator_wom(seg, wom_depth);
    std::vector<FrameSpan> oseg;
    for (const auto& o : others) oseg.push_back(o.subspan(begin, kSegmentFrames));
    out.at(step, 8) = indicator_wom_combined(oseg, wom_depth);
  }
  return out;
}

std::size_t competitor_of(const Market& aligned, std::size_t runner, std::size_t frame) {
  if (runner >= aligned.runners.size()) fail(ErrorCode::IndexOutOfRange, "runner index");
  const auto& own = aligned.runners[runner].frames;
  if (frame >= own.size()) fail(ErrorCode::IndexOutOfRange, "frame index");
  const auto mine = traded_tick(own[frame]);
  std::size_t best = runner;
  int best_gap = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < aligned.runners.size(); ++i) {
    if (i == runner) continue;
    const auto& fr = aligned.runners[i].frames;
    if (frame >= fr.size()) continue;
    const auto theirs = traded_tick(fr[frame]);
    if (!mine || !theirs) continue;
    const int gap = std::abs(*theirs - *mine);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

FeatureMatrix build_example(const Market& aligned, std::size_t runner, std::size_t end_frame, int wom_depth) {
  if (runner >= aligned.runners.size()) fail(ErrorCode::IndexOutOfRange, "runner index");
  if (end_frame < kWindowFrames)
    fail(ErrorCode::InsufficientFrames, "only " + std::to_string(end_frame) + " frames before the prediction instant");
  for (const auto& r : aligned.runners)
    if (r.frames.size() < end_frame) fail(ErrorCode::InsufficientFrames, "runner " + r.runner_id + " is short");
  const std::size_t begin = end_frame - kWindowFrames;
  auto span_of = [&](std::size_t i) {
    return FrameSpan(aligned.runners[i].frames).subspan(begin, kWindowFrames);
  };
  ExampleFrames ef;
  ef.runner = span_of(runner);
  ef.competitor = span_of(competitor_of(aligned, runner, end_frame - 1));
  for (std::size_t i = 0; i < aligned.runners.size(); ++i)
    if (i != runner) ef.others.push_back(span_of(i));
  return build_example(ef, wom_depth);
}

double target_integral(FrameSpan frames) {
  if (frames.size() < kTargetFrames)
    fail(ErrorCode::InsufficientFrames,
         "target window has " + std::to_string(frames.size()) + " frames, need " + std::to_string(kTargetFrames));
  return indicator_price_integral(frames.first(kTargetFrames));
}

int max_tick_variation(FrameSpan frames) {
  if (frames.size() < kTargetFrames)
    fail(ErrorCode::InsufficientFrames, "target window too short");
  const int base = tick_or(frames.front(), 0);
  int best = 0;
  int last = base;
  for (std::size_t i = 1; i < kTargetFrames; ++i) {
    last = tick_or(frames[i], last);
    const int d = last - base;
    if (std::abs(d) > std::abs(best)) best = d;
  }
  return best;
}

}  // namespace betlab
