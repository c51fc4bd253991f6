#include "betlab/features/category.hpp"

#include <algorithm>
#include <vector>

#include "betlab/core/error.hpp"

namespace betlab {

int category_index(const CategoryKey& key) {
  return static_cast<int>(key.favorite) * 27 + static_cast<int>(key.runners) * 9 + static_cast<int>(key.price) * 3 +
         static_cast<int>(key.liquidity);
}

CategoryKey category_from_index(int index) {
  if (index < 0 || index >= kCategoryCount) fail(ErrorCode::IndexOutOfRange, "category index " + std::to_string(index));
  CategoryKey k;
  k.favorite = static_cast<Favorite>(index / 27);
  k.runners = static_cast<RunnerCount>(index / 9 % 3);
  k.price = static_cast<PriceBand>(index / 3 % 3);
  k.liquidity = static_cast<Liquidity>(index % 3);
  return k;
}

std::string category_path(const CategoryKey& key) {
  static const char* fav[] = {"favorite", "nofavorite"};
  static const char* run[] = {"fewRunners", "mediumRunners", "manyRunners"};
  static const char* price[] = {"highOdd", "middleOdd", "lowOdd"};
  static const char* liq[] = {"lowLiquidity", "mediumLiquidity", "highLiquidity"};
  return std::string("root/") + fav[static_cast<int>(key.favorite)] + "/" + run[static_cast<int>(key.runners)] + "/" +
         price[static_cast<int>(key.price)] + "/" + liq[static_cast<int>(key.liquidity)];
}

int wom_depth(PriceBand band) {
  switch (band) {
    case PriceBand::High: return 2;
    case PriceBand::Medium: return 3;
    case PriceBand::Low: return 4;
  }
  return 3;
}

PriceBand price_band(double odds, const CategoryThresholds& t) {
  if (odds <= t.low_price_max) return PriceBand::Low;
  if (odds <= t.medium_price_max) return PriceBand::Medium;
  return PriceBand::High;
}

CategoryKey categorize(const Market& aligned, std::size_t runner, std::size_t frame, const CategoryThresholds& t) {
  if (runner >= aligned.runners.size()) fail(ErrorCode::IndexOutOfRange, "runner index");
  const auto& frames = aligned.runners[runner].frames;
  if (frame >= frames.size()) fail(ErrorCode::IndexOutOfRange, "frame index");
  const TickLadder& ladder = TickLadder::standard();

  CategoryKey key;
  const Frame& f = frames[frame];
  const int own = f.last_traded.value_or(ladder.size() - 1);
  bool favorite = true;
  for (std::size_t i = 0; i < aligned.runners.size(); ++i) {
    if (i == runner || frame >= aligned.runners[i].frames.size()) continue;
    const auto& other = aligned.runners[i].frames[frame].last_traded;
    if (other && *other < own) favorite = false;
  }
  key.favorite = favorite ? Favorite::Yes : Favorite::No;

  const int n = static_cast<int>(aligned.runners.size());
  key.runners = n <= t.few_runners_max      ? RunnerCount::Few
                : n <= t.medium_runners_max ? RunnerCount::Medium
                                            : RunnerCount::Many;
  key.price = price_band(ladder.price_value(own), t);

  const double volume = f.traded_total().as_double();
  key.liquidity = volume <= t.low_liquidity_max      ? Liquidity::Low
                  : volume <= t.medium_liquidity_max ? Liquidity::Medium
                                                     : Liquidity::High;
  return key;
}

void fit_liquidity_terciles(std::span<const double> volumes, CategoryThresholds& t) {
  if (volumes.size() < 3) fail(ErrorCode::TooFewValues, "need at least 3 volumes");
  std::vector<double> sorted(volumes.begin(), volumes.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  t.low_liquidity_max = sorted[(n + 2) / 3 - 1];
  t.medium_liquidity_max = sorted[(2 * n + 2) / 3 - 1];
}

}  // namespace betlab
