#include "betlab/harness/trade_log.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "betlab/core/error.hpp"

namespace betlab {

std::string_view to_string(EndState s) { return s == EndState::Closed ? "CLOSED" : "NOT_OPEN"; }

namespace {

std::string odds_text(double v) { return v == 0.0 ? "0" : format_decimal(v, 6); }

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double to_double(const std::string& s, const char* field) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(ErrorCode::ParseError, std::string("bad ") + field + ": " + s);
  return v;
}

int to_int(const std::string& s, const char* field) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(ErrorCode::ParseError, std::string("bad ") + field + ": " + s);
  return v;
}

}  // namespace

std::string format_trade_line(const TradeLogLine& l) {
  std::ostringstream os;
  os << l.pl.str() << '\t' << l.tm << '\t' << to_string(l.end_state) << '\t' << l.event << '\t' << l.runner << '\t'
     << fixed2(l.volume) << '\t' << l.n_r << '\t' << odds_text(l.entr) << '\t' << odds_text(l.targ) << '\t'
     << odds_text(l.sto) << '\t' << l.dir << '\t' << l.t_p << '\t' << l.t_l << '\t' << l.pt_p.str() << '\t'
     << l.pt_l.str() << '\t' << odds_text(l.o_odd) << '\t' << odds_text(l.c_odd) << '\t' << l.o_am.str() << '\t'
     << l.cat_am.str();
  return os.str();
}

TradeLogLine parse_trade_line(const std::string& text) {
  std::vector<std::string> f;
  std::string cell;
  std::istringstream is(text);
  while (std::getline(is, cell, '\t')) f.push_back(cell);
  if (f.size() != 19) fail(ErrorCode::ParseError, "trade line needs 19 fields, got " + std::to_string(f.size()));
  TradeLogLine l;
  l.pl = Money::parse(f[0]);
  l.tm = to_int(f[1], "TM");
  if (f[2] == "CLOSED")
    l.end_state = EndState::Closed;
  else if (f[2] == "NOT_OPEN")
    l.end_state = EndState::NotOpen;
  else
    fail(ErrorCode::ParseError, "bad END_STATE: " + f[2]);
  l.event = f[3];
  l.runner = f[4];
  l.volume = to_double(f[5], "VOLUME");
  l.n_r = to_int(f[6], "N_R");
  l.entr = to_double(f[7], "ENTR");
  l.targ = to_double(f[8], "TARG");
  l.sto = to_double(f[9], "STO");
  l.dir = f[10];
  if (l.dir != "LB" && l.dir != "BL" && l.dir != "-") fail(ErrorCode::ParseError, "bad DIR: " + l.dir);
  l.t_p = to_int(f[11], "T_P");
  l.t_l = to_int(f[12], "T_L");
  l.pt_p = Money::parse(f[13]);
  l.pt_l = Money::parse(f[14]);
  l.o_odd = to_double(f[15], "O_ODD");
  l.c_odd = to_double(f[16], "C_ODD");
  l.o_am = Money::parse(f[17]);
  l.cat_am = Money::parse(f[18]);
  return l;
}

void write_trade_log(std::ostream& out, const std::vector<TradeLogLine>& lines) {
  out << kTradeLogHeader << '\n';
  for (const auto& l : lines) out << format_trade_line(l) << '\n';
}

std::vector<TradeLogLine> read_trade_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTradeLogHeader) fail(ErrorCode::ParseError, "missing trade log header");
  std::vector<TradeLogLine> out;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_trade_line(line));
  return out;
}

Money recompute_pl(const TradeLogLine& l) {
  if (l.end_state == EndState::NotOpen) return Money();
  if (l.c_odd <= 0.0) fail(ErrorCode::InvalidArgument, "closed line without a close price");
  // Odds are logged with at most six decimals, so micro-odds are exact.
  const auto micro = [](double odds) { return static_cast<std::int64_t>(std::llround(odds * 1e6)); };
  const Money close =
      Money::pennies(div_round_half_even(static_cast<__int128>(l.o_am.in_pennies()) * micro(l.o_odd), micro(l.c_odd)));
  if (l.dir == "LB") return l.o_am - close;
  if (l.dir == "BL") return close - l.o_am;
  fail(ErrorCode::InvalidArgument, "closed line without a direction");
}

bool pl_consistent(const TradeLogLine& l) {
  if (l.end_state == EndState::NotOpen) return l.pl.is_zero() && l.o_am.is_zero();
  return recompute_pl(l) == l.pl;
}

void write_pl_curve(std::ostream& out, const std::vector<TradeLogLine>& lines, Money stake) {
  if (stake <= Money()) fail(ErrorCode::InvalidArgument, "stake must be positive");
  out << "trade,cumulative_pl,cumulative_relative_pl\n";
  Money total;
  int n = 0;
  char buf[96];
  for (const auto& l : lines) {
    if (l.end_state != EndState::Closed) continue;
    total += l.pl;
    std::snprintf(buf, sizeof buf, "%d,%s,%.6f\n", ++n, total.str().c_str(), total.as_double() / stake.as_double());
    out << buf;
  }
}

}  // namespace betlab
