#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "betlab/ladder/frame.hpp"

namespace betlab {

enum class Favorite { Yes = 0, No = 1 };
enum class RunnerCount { Few = 0, Medium = 1, Many = 2 };
enum class PriceBand { High = 0, Medium = 1, Low = 2 };
enum class Liquidity { Low = 0, Medium = 1, High = 2 };

inline constexpr int kCategoryCount = 54;
inline constexpr std::size_t kMinCategoryExamples = 1200;

struct CategoryKey {
  Favorite favorite = Favorite::Yes;
  RunnerCount runners = RunnerCount::Few;
  PriceBand price = PriceBand::Low;
  Liquidity liquidity = Liquidity::Low;

  friend bool operator==(const CategoryKey&, const CategoryKey&) = default;
};

// favorite * 27 + runners * 9 + price * 3 + liquidity.
int category_index(const CategoryKey& key);
CategoryKey category_from_index(int index);
std::string category_path(const CategoryKey& key);

struct CategoryThresholds {
  int few_runners_max = 5;
  int medium_runners_max = 11;
  double low_price_max = 4.0;
  double medium_price_max = 6.0;
  // Runner traded volume in pounds.
  double low_liquidity_max = 15000.0;
  double medium_liquidity_max = 30000.0;
};

// Weight-of-money depth for a price band: High 2, Medium 3, Low 4.
int wom_depth(PriceBand band);
PriceBand price_band(double odds, const CategoryThresholds& t);

// Snapshot of runner `runner` at frame `frame` of an aligned market. The
// favorite is the runner with the lowest last traded price (ties count for
// every tied runner).
CategoryKey categorize(const Market& aligned, std::size_t runner, std::size_t frame, const CategoryThresholds& t = {});

// Tercile cut points (nearest rank) of runner traded volumes in pounds.
void fit_liquidity_terciles(std::span<const double> volumes, CategoryThresholds& t);

}  // namespace betlab
