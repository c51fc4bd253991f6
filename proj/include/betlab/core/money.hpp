#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace betlab {

// Integer division rounding half to even; den must be positive.
std::int64_t div_round_half_even(__int128 num, std::int64_t den);

// Currency amount in whole pennies.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money pennies(std::int64_t p) { return Money(p); }
  static constexpr Money pounds(std::int64_t whole) { return Money(whole * 100); }
  // Rounds half-to-even to the nearest penny.
  static Money from_double(double pounds);
  // Accepts "2.65", "-0.28", "£2,65", "-£7,84", "3".
  static Money parse(std::string_view text);

  constexpr std::int64_t in_pennies() const { return p_; }
  constexpr double as_double() const { return static_cast<double>(p_) / 100.0; }
  // Always two decimals, '.' separator, no currency sign.
  std::string str() const;

  constexpr bool is_zero() const { return p_ == 0; }
  constexpr bool is_negative() const { return p_ < 0; }

  constexpr Money operator-() const { return Money(-p_); }
  constexpr Money& operator+=(Money o) { p_ += o.p_; return *this; }
  constexpr Money& operator-=(Money o) { p_ -= o.p_; return *this; }
  friend constexpr Money operator+(Money a, Money b) { return Money(a.p_ + b.p_); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.p_ - b.p_); }
  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t p) : p_(p) {}
  std::int64_t p_ = 0;
};

// Exact currency value in ten-thousandths of a pound. Products of a penny
// amount and a two-decimal price land here without rounding.
class PreciseMoney {
 public:
  constexpr PreciseMoney() = default;
  static constexpr PreciseMoney units(std::int64_t u) { return PreciseMoney(u); }
  static constexpr PreciseMoney from(Money m) { return PreciseMoney(m.in_pennies() * 100); }

  constexpr std::int64_t in_units() const { return u_; }
  constexpr double as_double() const { return static_cast<double>(u_) / 10000.0; }
  Money rounded() const { return Money::pennies(div_round_half_even(u_, 100)); }

  constexpr PreciseMoney operator-() const { return PreciseMoney(-u_); }
  constexpr PreciseMoney& operator+=(PreciseMoney o) { u_ += o.u_; return *this; }
  constexpr PreciseMoney& operator-=(PreciseMoney o) { u_ -= o.u_; return *this; }
  friend constexpr PreciseMoney operator+(PreciseMoney a, PreciseMoney b) { return PreciseMoney(a.u_ + b.u_); }
  friend constexpr PreciseMoney operator-(PreciseMoney a, PreciseMoney b) { return PreciseMoney(a.u_ - b.u_); }
  friend constexpr auto operator<=>(PreciseMoney, PreciseMoney) = default;

 private:
  constexpr explicit PreciseMoney(std::int64_t u) : u_(u) {}
  std::int64_t u_ = 0;
};

// Decimal odds with two-decimal resolution (every exchange ladder price fits).
class Odds {
 public:
  constexpr Odds() = default;
  static constexpr Odds hundredths(std::int32_t h) { return Odds(h); }
  // Exact conversion; throws OffLadderPrice if the value has more than two decimals.
  static Odds from_double(double value);
  // Accepts "4.6", "4,6", "3.95", "1000".
  static Odds parse(std::string_view text);

  constexpr std::int32_t in_hundredths() const { return h_; }
  constexpr double as_double() const { return static_cast<double>(h_) / 100.0; }
  // Shortest decimal form: "4.6", "3.95", "10".
  std::string str() const;

  friend constexpr auto operator<=>(Odds, Odds) = default;

 private:
  constexpr explicit Odds(std::int32_t h) : h_(h) {}
  std::int32_t h_ = 0;
};

// Shortest decimal rendering of a real with at most `max_decimals` places.
std::string format_decimal(double value, int max_decimals);

}  // namespace betlab
