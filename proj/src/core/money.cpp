#include "betlab/core/money.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "betlab/core/error.hpp"

namespace betlab {

std::int64_t div_round_half_even(__int128 num, std::int64_t den) {
  if (den <= 0) fail(ErrorCode::InvalidArgument, "div_round_half_even: non-positive denominator");
  __int128 q = num / den;
  __int128 r = num % den;
  if (r < 0) {  // floor division
    r += den;
    q -= 1;
  }
  const __int128 twice = 2 * r;
  if (twice > den || (twice == den && (q & 1) != 0)) q += 1;
  return static_cast<std::int64_t>(q);
}

namespace {

// Parses an optionally signed decimal with at most `max_decimals` fractional
// digits into an integer scaled by 10^max_decimals. Tolerates a leading '£'
// and ',' as decimal separator.
bool parse_scaled(std::string_view text, int max_decimals, std::int64_t& out) {
  bool negative = false;
  std::size_t i = 0;
  auto skip_currency = [&] {
    static constexpr std::string_view pound = "\xC2\xA3";  // UTF-8 '£'
    if (text.substr(i, pound.size()) == pound) i += pound.size();
  };
  skip_currency();
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  skip_currency();
  if (i >= text.size()) return false;
  std::int64_t whole = 0;
  bool digits = false;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    whole = whole * 10 + (text[i] - '0');
    digits = true;
    ++i;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size() && (text[i] == '.' || text[i] == ',')) {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (frac_digits == max_decimals) {
        if (text[i] != '0') return false;  // more precision than representable
      } else {
        frac = frac * 10 + (text[i] - '0');
        ++frac_digits;
      }
      digits = true;
      ++i;
    }
  }
  if (!digits || i != text.size()) return false;
  for (int d = frac_digits; d < max_decimals; ++d) frac *= 10;
  std::int64_t scale = 1;
  for (int d = 0; d < max_decimals; ++d) scale *= 10;
  out = whole * scale + frac;
  if (negative) out = -out;
  return true;
}

}  // namespace

Money Money::from_double(double pounds) {
  const double scaled = pounds * 100.0;
  double integral = std::nearbyint(scaled);  // default rounding mode is half-even
  return Money(static_cast<std::int64_t>(integral));
}

Money Money::parse(std::string_view text) {
  std::int64_t p = 0;
  if (!parse_scaled(text, 2, p)) fail(ErrorCode::ParseError, "bad money value: '" + std::string(text) + "'");
  return Money(p);
}

std::string Money::str() const {
  const std::int64_t a = p_ < 0 ? -p_ : p_;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", p_ < 0 ? "-" : "", static_cast<long long>(a / 100),
                static_cast<long long>(a % 100));
  return buf;
}

Odds Odds::from_double(double value) {
  const double scaled = value * 100.0;
  const double r = std::nearbyint(scaled);
  if (!std::isfinite(value) || std::fabs(scaled - r) > 1e-6)
    fail(ErrorCode::OffLadderPrice, "odds not representable with two decimals: " + format_decimal(value, 10));
  return Odds(static_cast<std::int32_t>(r));
}

Odds Odds::parse(std::string_view text) {
  std::int64_t h = 0;
  if (!parse_scaled(text, 2, h)) fail(ErrorCode::ParseError, "bad odds value: '" + std::string(text) + "'");
  return Odds(static_cast<std::int32_t>(h));
}

std::string Odds::str() const { return format_decimal(as_double(), 2); }

std::string format_decimal(double value, int max_decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", max_decimals, value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

}  // namespace betlab
