#include "betlab/ladder/frame_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_depth(const DepthMap& depth, const TickLadder& ladder) {
  std::string out;
  for (const auto& [tick, amount] : depth) {
    if (!out.empty()) out += ',';
    out += ladder.price_at(tick).str();
    out += ':';
    out += amount.str();
  }
  return out.empty() ? "-" : out;
}

DepthMap parse_depth(const std::string& text, const TickLadder& ladder) {
  DepthMap out;
  if (text == "-" || text.empty()) return out;
  for (const auto& item : split(text, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorCode::ParseError, "depth entry without ':' in '" + item + "'");
    const int tick = ladder.tick_index(Odds::parse(item.substr(0, colon)));
    out[tick] += Money::parse(item.substr(colon + 1));
  }
  return out;
}

std::string format_frame_line(const std::string& runner_id, const Frame& frame, const TickLadder& ladder) {
  std::string line = std::to_string(frame.timestamp_ms);
  line += '\t';
  line += runner_id;
  line += '\t';
  line += frame.last_traded ? ladder.price_at(*frame.last_traded).str() : "-";
  for (const DepthMap* m : {&frame.bids, &frame.asks, &frame.traded}) {
    line += '\t';
    line += format_depth(*m, ladder);
  }
  return line;
}

void write_market(std::ostream& os, const Market& market, const TickLadder& ladder) {
  os << "#market\t" << market.market_id << '\t' << market.event << '\t' << market.start_ms << '\n';
  // interleave runners by timestamp so the file reads as a time series
  std::vector<std::pair<std::int64_t, std::pair<std::size_t, std::size_t>>> order;
  for (std::size_t r = 0; r < market.runners.size(); ++r)
    for (std::size_t f = 0; f < market.runners[r].frames.size(); ++f)
      order.push_back({market.runners[r].frames[f].timestamp_ms, {r, f}});
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [ts, idx] : order) {
    const auto& runner = market.runners[idx.first];
    os << format_frame_line(runner.runner_id, runner.frames[idx.second], ladder) << '\n';
  }
}

Market read_market(std::istream& is, const TickLadder& ladder) {
  Market market;
  bool header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("##", 0) == 0) continue;
    auto fields = split(line, '\t');
    try {
      if (fields[0] == "#market") {
        if (fields.size() != 4) fail(ErrorCode::ParseError, "market header needs 4 fields");
        market.market_id = fields[1];
        market.event = fields[2];
        market.start_ms = std::stoll(fields[3]);
        header = true;
        continue;
      }
      if (fields.size() != 6) fail(ErrorCode::ParseError, "frame line needs 6 fields, got " + std::to_string(fields.size()));
      Frame f;
      f.timestamp_ms = std::stoll(fields[0]);
      if (fields[2] != "-") f.last_traded = ladder.tick_index(Odds::parse(fields[2]));
      f.bids = parse_depth(fields[3], ladder);
      f.asks = parse_depth(fields[4], ladder);
      f.traded = parse_depth(fields[5], ladder);
      auto it = std::find_if(market.runners.begin(), market.runners.end(),
                             [&](const RunnerBook& r) { return r.runner_id == fields[1]; });
      if (it == market.runners.end()) {
        market.runners.push_back({fields[1], {}});
        it = market.runners.end() - 1;
      }
      it->frames.push_back(std::move(f));
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::exception& e) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header) fail(ErrorCode::ParseError, "missing #market header");
  for (auto& r : market.runners)
    std::stable_sort(r.frames.begin(), r.frames.end(),
                     [](const Frame& a, const Frame& b) { return a.timestamp_ms < b.timestamp_ms; });
  return market;
}

Market load_market(const std::string& path, const TickLadder& ladder) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  try {
    return read_market(in, ladder);
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

void save_market(const std::string& path, const Market& market, const TickLadder& ladder) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  write_market(out, market, ladder);
}

}  // namespace betlab
