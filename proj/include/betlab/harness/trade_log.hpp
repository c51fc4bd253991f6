#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "betlab/core/money.hpp"

namespace betlab {

enum class EndState { Closed, NotOpen };
std::string_view to_string(EndState s);

// One terminal line per traded runner. DIR is "LB" when the trade opened
// with a Lay (odds expected up), "BL" when it opened with a Back, "-" when
// no mechanism was chosen. Odds fields hold 0 when unknown.
struct TradeLogLine {
  Money pl;
  int tm = 0;  // 1 swing, 2 trailing stop
  EndState end_state = EndState::NotOpen;
  std::string event;
  std::string runner;
  double volume = 0.0;  // runner traded volume at the prediction instant, pounds
  int n_r = 0;
  double entr = 0.0;
  double targ = 0.0;
  double sto = 0.0;
  std::string dir = "-";
  int t_p = 0;
  int t_l = 0;
  Money pt_p;
  Money pt_l;
  double o_odd = 0.0;
  double c_odd = 0.0;
  Money o_am;
  Money cat_am;

  friend bool operator==(const TradeLogLine&, const TradeLogLine&) = default;
};

inline constexpr std::string_view kTradeLogHeader =
    "P&L\tTM\tEND_STATE\tEVENT\tRUNNER\tVOLUME\tN_R\tENTR\tTARG\tSTO\tDIR\tT_P\tT_L\tPT_P\tPT_L\tO_ODD\tC_ODD\tO_AM\tCAT_AM";

std::string format_trade_line(const TradeLogLine& line);
TradeLogLine parse_trade_line(const std::string& text);

// Header line followed by one line per entry.
void write_trade_log(std::ostream& out, const std::vector<TradeLogLine>& lines);
std::vector<TradeLogLine> read_trade_log(std::istream& in);

// Greened result implied by the line's own open/close odds and open amount:
// the close amount is O_AM * O_ODD / C_ODD to the penny, PL is the open
// stake minus it for LB and the reverse for BL. Zero for NOT_OPEN lines.
Money recompute_pl(const TradeLogLine& line);
bool pl_consistent(const TradeLogLine& line);

// Cumulative PL over CLOSED lines:
//   trade,cumulative_pl,cumulative_relative_pl
// where the relative column divides by the stake.
void write_pl_curve(std::ostream& out, const std::vector<TradeLogLine>& lines, Money stake);

}  // namespace betlab
