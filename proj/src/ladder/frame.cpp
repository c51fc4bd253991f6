#include "betlab/ladder/frame.hpp"

#include <algorithm>
#include <set>

namespace betlab {

std::optional<int> Frame::best_bid() const {
  for (auto it = bids.rbegin(); it != bids.rend(); ++it)
    if (it->second > Money()) return it->first;
  return std::nullopt;
}

std::optional<int> Frame::best_ask() const {
  for (const auto& [tick, amount] : asks)
    if (amount > Money()) return tick;
  return std::nullopt;
}

Money Frame::amount_at(BookSide s, int tick) const {
  const auto& m = side(s);
  auto it = m.find(tick);
  return it == m.end() ? Money() : it->second;
}

Money Frame::amount_at_traded(int tick) const {
  auto it = traded.find(tick);
  return it == traded.end() ? Money() : it->second;
}

Money Frame::side_total(BookSide s) const {
  Money total;
  for (const auto& [tick, amount] : side(s)) total += amount;
  return total;
}

Money Frame::side_total(BookSide s, int depth) const {
  Money total;
  int levels = 0;
  auto take = [&](Money amount) {
    if (amount <= Money() || levels >= depth) return;
    total += amount;
    ++levels;
  };
  if (s == BookSide::Bid) {
    for (auto it = bids.rbegin(); it != bids.rend(); ++it) take(it->second);
  } else {
    for (const auto& [tick, amount] : asks) take(amount);
  }
  return total;
}

Money Frame::traded_total() const {
  Money total;
  for (const auto& [tick, amount] : traded) total += amount;
  return total;
}

std::string_view to_string(FrameViolation v) {
  switch (v) {
    case FrameViolation::NegativeAmount: return "NegativeAmount";
    case FrameViolation::CrossedBook: return "CrossedBook";
    case FrameViolation::TickOutOfRange: return "TickOutOfRange";
    case FrameViolation::NonIncreasingTimestamp: return "NonIncreasingTimestamp";
    case FrameViolation::VolumeDecreased: return "VolumeDecreased";
  }
  return "?";
}

std::vector<FrameViolation> validate_frame(const Frame& frame, const TickLadder& ladder) {
  std::vector<FrameViolation> out;
  bool negative = false;
  bool out_of_range = frame.last_traded && !ladder.contains(*frame.last_traded);
  for (const DepthMap* m : {&frame.bids, &frame.asks, &frame.traded}) {
    for (const auto& [tick, amount] : *m) {
      negative |= amount < Money();
      out_of_range |= !ladder.contains(tick);
    }
  }
  if (negative) out.push_back(FrameViolation::NegativeAmount);
  auto bb = frame.best_bid();
  auto ba = frame.best_ask();
  if (bb && ba && *bb >= *ba) out.push_back(FrameViolation::CrossedBook);
  if (out_of_range) out.push_back(FrameViolation::TickOutOfRange);
  return out;
}

std::vector<SequenceViolation> validate_sequence(const std::vector<Frame>& frames, const TickLadder& ladder) {
  std::vector<SequenceViolation> out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (auto v : validate_frame(frames[i], ladder)) out.push_back({i, v});
    if (i == 0) continue;
    if (frames[i].timestamp_ms <= frames[i - 1].timestamp_ms)
      out.push_back({i, FrameViolation::NonIncreasingTimestamp});
    for (const auto& [tick, before] : frames[i - 1].traded) {
      auto it = frames[i].traded.find(tick);
      const Money now = it == frames[i].traded.end() ? Money() : it->second;
      if (now < before) {
        out.push_back({i, FrameViolation::VolumeDecreased});
        break;
      }
    }
  }
  return out;
}

const RunnerBook* Market::find_runner(const std::string& id) const {
  for (const auto& r : runners)
    if (r.runner_id == id) return &r;
  return nullptr;
}

Market align_runners(const Market& market) {
  std::set<std::int64_t> stamps;
  for (const auto& r : market.runners)
    for (const auto& f : r.frames) stamps.insert(f.timestamp_ms);
  Market out{market.market_id, market.event, market.start_ms, {}};
  for (const auto& r : market.runners) {
    RunnerBook book{r.runner_id, {}};
    if (r.frames.empty()) {
      out.runners.push_back(std::move(book));
      continue;
    }
    std::size_t next = 0;
    const Frame* current = &r.frames.front();
    for (auto ts : stamps) {
      while (next < r.frames.size() && r.frames[next].timestamp_ms <= ts) current = &r.frames[next++];
      Frame f = *current;
      f.timestamp_ms = ts;
      book.frames.push_back(std::move(f));
    }
    out.runners.push_back(std::move(book));
  }
  return out;
}

}  // namespace betlab
