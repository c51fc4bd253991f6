#include "betlab/features/indicators.hpp"

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

// Last traded tick, carried forward through frames without a trade.
std::vector<int> traded_path(FrameSpan frames) {
  std::vector<int> out;
  std::optional<int> last;
  for (const auto& f : frames) {
    if (f.last_traded) last = f.last_traded;
    if (!last) {
      // find the first known value and use it backwards
      for (const auto& g : frames)
        if (g.last_traded) {
          last = g.last_traded;
          break;
        }
    }
    out.push_back(last.value_or(0));
  }
  return out;
}

double pounds(Money m) { return m.as_double(); }

}  // namespace

double indicator_price_integral(FrameSpan segment) {
  if (segment.empty()) return 0.0;
  const auto ticks = traded_path(segment);
  double sum = 0.0;
  for (std::size_t i = 1; i < ticks.size(); ++i) sum += ticks[i] - ticks[0];
  return sum;
}

double indicator_liquidity_delta(FrameSpan segment, BookSide side) {
  double sum = 0.0;
  for (std::size_t i = 1; i < segment.size(); ++i)
    sum += pounds(segment[i].side_total(side) - segment[i - 1].side_total(side));
  return sum;
}

double indicator_volume_direction(FrameSpan segment) {
  double sum = 0.0;
  for (std::size_t i = 1; i < segment.size(); ++i) {
    const Frame& prev = segment[i - 1];
    const Frame& cur = segment[i];
    const auto bid = prev.best_bid();
    const auto ask = prev.best_ask();
    for (const auto& [tick, amount] : cur.traded) {
      const Money delta = amount - prev.amount_at_traded(tick);
      if (delta <= Money()) continue;
      int sign = 0;
      if (bid && tick <= *bid)
        sign = -1;
      else if (ask && tick >= *ask)
        sign = 1;
      else if (prev.last_traded)
        sign = tick < *prev.last_traded ? -1 : tick > *prev.last_traded ? 1 : 0;
      sum += sign * pounds(delta);
    }
  }
  return sum;
}

double indicator_price_diff_from_start(const Frame& window_start, FrameSpan segment) {
  if (segment.empty()) return 0.0;
  std::vector<Frame> joined;
  joined.reserve(segment.size() + 1);
  joined.push_back(window_start);
  joined.insert(joined.end(), segment.begin(), segment.end());
  const auto ticks = traded_path(joined);
  return ticks.back() - ticks.front();
}

double weight_of_money(const Frame& frame, int depth) {
  const double bid = pounds(frame.side_total(BookSide::Bid, depth));
  const double ask = pounds(frame.side_total(BookSide::Ask, depth));
  if (bid + ask <= 0.0) return 0.5;
  return bid / (bid + ask);
}

double indicator_wom(FrameSpan segment, int depth) {
  if (segment.empty()) return 0.5;
  double sum = 0.0;
  for (const auto& f : segment) sum += weight_of_money(f, depth);
  return sum / static_cast<double>(segment.size());
}

double indicator_wom_combined(const std::vector<FrameSpan>& runners, int depth) {
  if (runners.empty() || runners.front().empty()) return 0.5;
  const std::size_t n = runners.front().size();
  for (const auto& r : runners)
    if (r.size() != n) fail(ErrorCode::ShapeMismatch, "runner segments differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double bid = 0.0, ask = 0.0;
    for (const auto& r : runners) {
      bid += pounds(r[i].side_total(BookSide::Bid, depth));
      ask += pounds(r[i].side_total(BookSide::Ask, depth));
    }
    sum += bid + ask <= 0.0 ? 0.5 : bid / (bid + ask);
  }
  return sum / static_cast<double>(n);
}

}  // namespace betlab
