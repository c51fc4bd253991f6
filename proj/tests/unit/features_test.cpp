#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "betlab/core/log.hpp"
#include "betlab/features/category.hpp"
#include "betlab/features/dataset.hpp"
#include "betlab/features/example.hpp"
#include "betlab/features/labels.hpp"
#include "betlab/features/normalization.hpp"
#include "betlab/ladder/scripted.hpp"
#include "support/fixtures.hpp"

using namespace betlab;
using betlab::testing::depth;
using betlab::testing::error_code_of;
using betlab::testing::example_book;
using betlab::testing::tick;

namespace {

Frame priced(double price) {
  Frame f;
  f.last_traded = tick(price);
  return f;
}

// The three frames of the worked indicator example: the reference book, then
// a trade at 4.5 that clears the 4.5 bid, then a trade at 4.4 that clears
// the 4.4 and 4.3 bids.
std::vector<Frame> worked_frames() {
  Frame f3 = example_book();
  Frame f2 = f3;
  f2.timestamp_ms = 500;
  f2.bids.erase(tick(4.5));
  f2.traded[tick(4.5)] += Money::pounds(8);
  f2.last_traded = tick(4.5);
  f2.asks[tick(4.5)] = Money::pounds(92);
  Frame f1 = f2;
  f1.timestamp_ms = 1000;
  f1.bids.erase(tick(4.4));
  f1.bids.erase(tick(4.3));
  f1.traded[tick(4.4)] += Money::pounds(2);
  f1.last_traded = tick(4.4);
  f1.asks[tick(4.4)] = Money::pounds(98);
  return {f3, f2, f1};
}

// Segment as laid out in the worked example: the oldest frame repeated.
std::vector<Frame> worked_segment() {
  auto w = worked_frames();
  return {w[0], w[0], w[1], w[2]};
}

std::vector<Frame> constant_stream(std::size_t n, const Frame& f) {
  std::vector<Frame> out(n, f);
  for (std::size_t i = 0; i < n; ++i) out[i].timestamp_ms = static_cast<std::int64_t>(i) * 500;
  return out;
}

Frame scale(Frame f, int c) {
  for (auto* side : {&f.bids, &f.asks, &f.traded})
    for (auto& [t, a] : *side) a = Money::pennies(a.in_pennies() * c);
  return f;
}

}  // namespace

TEST(Indicators, PriceIntegral) {
  std::vector<Frame> down{priced(4.6), priced(4.5), priced(4.4)};
  EXPECT_DOUBLE_EQ(indicator_price_integral(down), -3.0);
  std::vector<Frame> flat{priced(4.6), priced(4.6), priced(4.6)};
  EXPECT_DOUBLE_EQ(indicator_price_integral(flat), 0.0);
  std::vector<Frame> up{priced(4.6), priced(4.7), priced(4.8)};
  EXPECT_DOUBLE_EQ(indicator_price_integral(up), 3.0);
  EXPECT_DOUBLE_EQ(indicator_price_integral(worked_segment()), -3.0);
}

TEST(Indicators, LiquidityDelta) {
  const auto seg = worked_segment();
  EXPECT_DOUBLE_EQ(indicator_liquidity_delta(seg, BookSide::Ask), 190.0);
  EXPECT_DOUBLE_EQ(indicator_liquidity_delta(seg, BookSide::Bid), -20.0);
  const auto same = constant_stream(4, example_book());
  EXPECT_DOUBLE_EQ(indicator_liquidity_delta(same, BookSide::Ask), 0.0);
  EXPECT_DOUBLE_EQ(indicator_liquidity_delta(same, BookSide::Bid), 0.0);
}

TEST(Indicators, VolumeDirection) {
  EXPECT_DOUBLE_EQ(indicator_volume_direction(worked_segment()), -10.0);
  EXPECT_DOUBLE_EQ(indicator_volume_direction(constant_stream(4, example_book())), 0.0);

  Frame a = example_book();
  Frame b = a;
  b.traded[tick(4.6)] += Money::pounds(5);
  Frame c = b;
  c.traded[tick(4.6)] += Money::pounds(7);
  std::vector<Frame> lifts{a, b, c};
  EXPECT_DOUBLE_EQ(indicator_volume_direction(lifts), 12.0);
}

TEST(Indicators, VolumeInsideSpreadFollowsLastTrade) {
  Frame a;
  a.last_traded = tick(4.5);
  a.bids = depth({{4.2, 10}});
  a.asks = depth({{4.8, 10}});
  Frame b = a;
  b.traded[tick(4.6)] = Money::pounds(3);
  Frame c = b;
  c.traded[tick(4.4)] = Money::pounds(4);
  std::vector<Frame> seg{a, b};
  EXPECT_DOUBLE_EQ(indicator_volume_direction(seg), 3.0);
  b.last_traded = tick(4.6);
  std::vector<Frame> seg2{b, c};
  EXPECT_DOUBLE_EQ(indicator_volume_direction(seg2), -4.0);
}

TEST(Indicators, PriceDiffFromStart) {
  std::vector<Frame> seg{priced(4.5), priced(4.4)};
  EXPECT_DOUBLE_EQ(indicator_price_diff_from_start(priced(4.6), seg), -2.0);
  std::vector<Frame> same{priced(4.6)};
  EXPECT_DOUBLE_EQ(indicator_price_diff_from_start(priced(4.6), same), 0.0);
  std::vector<Frame> up{priced(4.6)};
  EXPECT_DOUBLE_EQ(indicator_price_diff_from_start(priced(4.0), up), 6.0);
}

TEST(Indicators, WeightOfMoney) {
  Frame balanced;
  balanced.bids = depth({{4.5, 10}, {4.4, 20}});
  balanced.asks = depth({{4.6, 15}, {4.7, 15}});
  std::vector<Frame> seg(4, balanced);
  EXPECT_DOUBLE_EQ(indicator_wom(seg, 2), 0.5);

  Frame bids_only;
  bids_only.bids = depth({{4.5, 10}});
  EXPECT_DOUBLE_EQ(weight_of_money(bids_only, 3), 1.0);
  EXPECT_DOUBLE_EQ(weight_of_money(Frame{}, 3), 0.5);

  // Reference book, depth 2: 10 bid against 497 ask.
  EXPECT_NEAR(weight_of_money(example_book(), 2), 10.0 / 507.0, 1e-12);
  // Depth 3: 20 against 760.
  EXPECT_NEAR(weight_of_money(example_book(), 3), 20.0 / 780.0, 1e-12);
}

TEST(Indicators, WeightOfMoneyAveragesFrames) {
  // Three frames with WoM 0.02, 0.43, 0.45.
  auto make = [](double bid, double ask) {
    Frame f;
    f.bids = depth({{4.5, bid}});
    f.asks = depth({{4.6, ask}});
    return f;
  };
  std::vector<Frame> seg{make(2, 98), make(43, 57), make(45, 55)};
  EXPECT_NEAR(indicator_wom(seg, 2), 0.30, 1e-12);
}

TEST(Indicators, CombinedWeightOfMoneyPoolsRunners) {
  Frame a;
  a.bids = depth({{4.5, 30}});
  a.asks = depth({{4.6, 10}});
  Frame b;
  b.bids = depth({{2.5, 10}});
  b.asks = depth({{2.6, 50}});
  std::vector<Frame> ra(4, a), rb(4, b);
  std::vector<FrameSpan> runners{ra, rb};
  EXPECT_NEAR(indicator_wom_combined(runners, 3), 40.0 / 100.0, 1e-12);
  EXPECT_DOUBLE_EQ(indicator_wom_combined({}, 3), 0.5);
}

TEST(Indicators, ScaleCovariance) {
  const auto seg = worked_segment();
  for (int c : {2, 3, 7}) {
    std::vector<Frame> scaled;
    for (const auto& f : seg) scaled.push_back(scale(f, c));
    EXPECT_DOUBLE_EQ(indicator_liquidity_delta(scaled, BookSide::Ask), c * indicator_liquidity_delta(seg, BookSide::Ask));
    EXPECT_DOUBLE_EQ(indicator_liquidity_delta(scaled, BookSide::Bid), c * indicator_liquidity_delta(seg, BookSide::Bid));
    EXPECT_DOUBLE_EQ(indicator_volume_direction(scaled), c * indicator_volume_direction(seg));
    for (int d : {2, 3, 4}) EXPECT_NEAR(indicator_wom(scaled, d), indicator_wom(seg, d), 1e-12);
  }
}

TEST(Example, ConstantStream) {
  const auto frames = constant_stream(kWindowFrames, example_book());
  const FeatureMatrix m = build_example(ExampleFrames{frames, frames, {}}, 3);
  ASSERT_EQ(m.rows, 128u);
  ASSERT_EQ(m.cols, 9u);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < 7; ++c) EXPECT_EQ(m.at(r, c), 0.0);
    EXPECT_DOUBLE_EQ(m.at(r, 8), 0.5);
  }

  Frame balanced;
  balanced.last_traded = tick(3.0);
  balanced.bids = depth({{2.98, 20}});
  balanced.asks = depth({{3.0, 20}});
  const auto flat = constant_stream(kWindowFrames, balanced);
  const FeatureMatrix b = build_example(ExampleFrames{flat, flat, {flat}}, 4);
  for (std::size_t r = 0; r < b.rows; ++r) {
    EXPECT_DOUBLE_EQ(b.at(r, 7), 0.5);
    EXPECT_DOUBLE_EQ(b.at(r, 8), 0.5);
  }
}

TEST(Example, WorkedSegmentEmbeddedInStream) {
  const auto seg = worked_segment();
  auto frames = constant_stream(kWindowFrames, seg.back());
  std::copy(seg.begin(), seg.end(), frames.begin());
  const FeatureMatrix m = build_example(ExampleFrames{frames, frames, {}}, 3);
  EXPECT_DOUBLE_EQ(m.at(0, 0), -3.0);
  EXPECT_DOUBLE_EQ(m.at(0, 1), -3.0);
  EXPECT_DOUBLE_EQ(m.at(0, 2), 190.0);
  EXPECT_DOUBLE_EQ(m.at(0, 3), -20.0);
  EXPECT_DOUBLE_EQ(m.at(0, 4), -10.0);
  EXPECT_DOUBLE_EQ(m.at(0, 5), -2.0);
  EXPECT_DOUBLE_EQ(m.at(0, 6), -2.0);
  // Later rows sit at a constant 4.4, two ticks under the start.
  EXPECT_DOUBLE_EQ(m.at(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(m.at(1, 5), -2.0);
}

TEST(Example, FrameCountChecks) {
  const auto short_stream = constant_stream(kWindowFrames - 1, example_book());
  EXPECT_EQ(error_code_of([&] { build_example(ExampleFrames{short_stream, short_stream, {}}, 3); }),
            ErrorCode::InsufficientFrames);
  // Longer input uses the trailing 512 frames.
  auto long_stream = constant_stream(kWindowFrames + 10, example_book());
  for (std::size_t i = 0; i < 10; ++i) long_stream[i].last_traded = tick(2.0);
  const auto tail = std::vector<Frame>(long_stream.begin() + 10, long_stream.end());
  EXPECT_EQ(build_example(ExampleFrames{long_stream, long_stream, {}}, 3),
            build_example(ExampleFrames{tail, tail, {}}, 3));
}

TEST(Example, SegmentLocality) {
  std::mt19937_64 rng(11);
  std::vector<int> ticks(kWindowFrames);
  int t = tick(4.0);
  for (auto& x : ticks) {
    t += static_cast<int>(rng() % 3) - 1;
    x = t;
  }
  const auto frames = scripted_frames(ticks, ScriptParams{}, TickLadder::standard());
  const FeatureMatrix base = build_example(ExampleFrames{frames, frames, {}}, 3);

  // Swap two later segments; their rows move with them and the rest stay.
  auto swapped = frames;
  std::swap_ranges(swapped.begin() + 40, swapped.begin() + 44, swapped.begin() + 80);
  const FeatureMatrix m = build_example(ExampleFrames{swapped, swapped, {}}, 3);
  for (std::size_t c : {0u, 2u, 3u, 4u, 5u, 7u}) {
    EXPECT_EQ(m.at(10, c), base.at(20, c)) << c;
    EXPECT_EQ(m.at(20, c), base.at(10, c)) << c;
    EXPECT_EQ(m.at(5, c), base.at(5, c)) << c;
  }
}

TEST(Example, CompetitorIsClosestPrice) {
  Market mk;
  for (double p : {2.0, 4.6, 4.9, 9.0}) {
    RunnerBook r;
    r.runner_id = std::to_string(p);
    r.frames = {priced(p)};
    mk.runners.push_back(r);
  }
  EXPECT_EQ(competitor_of(mk, 1, 0), 2u);
  EXPECT_EQ(competitor_of(mk, 0, 0), 1u);
  EXPECT_EQ(competitor_of(mk, 3, 0), 2u);
  Market single;
  single.runners.push_back(mk.runners[0]);
  EXPECT_EQ(competitor_of(single, 0, 0), 0u);
}

TEST(Target, Integral) {
  std::vector<Frame> flat(kTargetFrames, priced(4.6));
  EXPECT_DOUBLE_EQ(target_integral(flat), 0.0);
  std::vector<Frame> drop(kTargetFrames, priced(4.5));
  drop[0] = priced(4.6);
  EXPECT_DOUBLE_EQ(target_integral(drop), -239.0);
  std::vector<Frame> rise(kTargetFrames, priced(4.7));
  rise[0] = priced(4.6);
  EXPECT_DOUBLE_EQ(target_integral(rise), 239.0);
  std::vector<Frame> short_window(kTargetFrames - 1, priced(4.6));
  EXPECT_EQ(error_code_of([&] { target_integral(short_window); }), ErrorCode::InsufficientFrames);
}

TEST(Target, MaxVariation) {
  std::vector<Frame> f(kTargetFrames, priced(4.6));
  f[10] = priced(5.0);
  f[20] = priced(4.0);
  EXPECT_EQ(max_tick_variation(f), -6);
  f[30] = priced(5.3);
  EXPECT_EQ(max_tick_variation(f), 7);
}

TEST(Normalization, TruncatedMinMax) {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = 99 - i;
  const MinMax r = truncated_minmax(v);
  EXPECT_EQ(r.min, 10.0);
  EXPECT_EQ(r.max, 89.0);
  EXPECT_FALSE(r.widened);

  std::vector<double> sym;
  for (int i = -50; i <= 50; ++i) sym.push_back(i * 0.5);
  const MinMax s = truncated_minmax(sym);
  EXPECT_EQ(s.min, -s.max);

  std::vector<double> few(9, 1.0);
  EXPECT_EQ(error_code_of([&] { truncated_minmax(few); }), ErrorCode::TooFewValues);
}

TEST(Normalization, TruncationMatchesCountingOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng() % 300;
    std::vector<double> v(n);
    for (auto& x : v) x = std::round(g(rng) * 4) / 4;
    const MinMax r = truncated_minmax(v);
    // At least floor(0.1 n) values lie on or below min and on or above max,
    // and fewer than that lie strictly beyond each bound.
    const auto k = static_cast<std::size_t>(std::floor(0.1 * n));
    std::size_t below = 0, at_or_below = 0, above = 0, at_or_above = 0;
    for (double x : v) {
      below += x < r.min;
      at_or_below += x <= r.min;
      above += x > r.max;
      at_or_above += x >= r.max;
    }
    EXPECT_LE(below, k);
    EXPECT_GE(at_or_below, k + 1);
    EXPECT_LE(above, k);
    EXPECT_GE(at_or_above, k + 1);
  }
}

TEST(Normalization, DegenerateRangeIsWidened) {
  std::vector<std::string> warnings;
  auto old = set_log_sink([&](LogLevel level, const std::string& msg) {
    if (level == LogLevel::Warning) warnings.push_back(msg);
  });
  std::vector<double> v(20, 3.0);
  const MinMax r = truncated_minmax(v);
  set_log_sink(old);
  EXPECT_TRUE(r.widened);
  EXPECT_LT(r.min, 3.0);
  EXPECT_GT(r.max, 3.0);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_EQ(normalize(3.0, r), 0.0);
}

TEST(Normalization, Normalize) {
  const MinMax r{-2.0, 6.0, false};
  EXPECT_EQ(normalize(-2.0, r), -1.0);
  EXPECT_EQ(normalize(6.0, r), 1.0);
  EXPECT_EQ(normalize(2.0, r), 0.0);
  EXPECT_EQ(normalize(100.0, r), 1.0);
  EXPECT_EQ(normalize(-100.0, r), -1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    if (a == b) continue;
    const MinMax range{std::min(a, b), std::max(a, b), false};
    const double y = normalize(u(rng), range);
    EXPECT_GE(y, -1.0);
    EXPECT_LE(y, 1.0);
  }
}

TEST(Normalization, FitApplyAndPersist) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0, 10);
  std::vector<FeatureMatrix> xs(5);
  for (auto& m : xs)
    for (auto& v : m.data) v = g(rng);
  const NormalizationSpec spec = fit_normalization(xs);
  for (const auto& c : spec.columns) EXPECT_LT(c.min, c.max);
  auto m = xs[0];
  spec.apply(m);
  for (double v : m.data) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  const NormalizationSpec back = normalization_from_json(to_json(spec));
  for (std::size_t c = 0; c < kVariables; ++c) {
    EXPECT_DOUBLE_EQ(back.columns[c].min, spec.columns[c].min);
    EXPECT_DOUBLE_EQ(back.columns[c].max, spec.columns[c].max);
  }
  EXPECT_EQ(error_code_of([] { normalization_from_json("{"); }), ErrorCode::ParseError);
}

TEST(Labels, QuintilesOfOneToHundred) {
  std::vector<double> t(100);
  for (int i = 0; i < 100; ++i) t[i] = 100 - i;
  const auto q = label_by_quintiles(t);
  EXPECT_EQ(q.boundaries, (std::array<double, 4>{20, 40, 60, 80}));
  for (int i = 0; i < 100; ++i) EXPECT_EQ(q.labels[i], (static_cast<int>(t[i]) - 1) / 20);
  EXPECT_EQ(class_for(20.0, q.boundaries), 0);
  EXPECT_EQ(class_for(20.5, q.boundaries), 1);
  EXPECT_EQ(class_for(1000.0, q.boundaries), 4);
}

TEST(Labels, Errors) {
  std::vector<double> few{1, 2, 3, 4};
  EXPECT_EQ(error_code_of([&] { label_by_quintiles(few); }), ErrorCode::TooFewValues);
  std::vector<double> same(50, 2.0);
  EXPECT_EQ(error_code_of([&] { label_by_quintiles(same); }), ErrorCode::DegenerateDistribution);
}

TEST(Labels, BalancedOnRandomSets) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + rng() % 2000;
    std::vector<double> t(n);
    // Heavy ties on purpose.
    for (auto& x : t) x = static_cast<double>(static_cast<int>(rng() % 21) - 10);
    if (std::all_of(t.begin(), t.end(), [&](double x) { return x == t[0]; })) continue;
    const auto q = label_by_quintiles(t);
    std::array<std::size_t, 5> counts{};
    for (int l : q.labels) ++counts[l];
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    EXPECT_LE(*hi - *lo, 1u);
    // Labels are monotone in the target.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 20 && j < n; ++j) {
        if (t[i] < t[j]) {
          EXPECT_LE(q.labels[i], q.labels[j]);
        }
      }
  }
}

TEST(Labels, SymmetricNeutralStraddlesZero) {
  std::vector<double> t;
  for (int i = -100; i <= 100; ++i) t.push_back(i);
  const auto q = label_by_quintiles(t);
  EXPECT_LT(q.boundaries[1], 0.0);
  EXPECT_GT(q.boundaries[2], 0.0);
}

TEST(Category, IndexBijection) {
  CategoryKey k{Favorite::No, RunnerCount::Medium, PriceBand::Medium, Liquidity::High};
  EXPECT_EQ(category_index(k), 41);
  EXPECT_EQ(category_path(k), "root/nofavorite/mediumRunners/middleOdd/highLiquidity");
  std::vector<bool> seen(kCategoryCount, false);
  for (int i = 0; i < kCategoryCount; ++i) {
    const auto key = category_from_index(i);
    EXPECT_EQ(category_index(key), i);
    EXPECT_FALSE(seen[i]);
    seen[i] = true;
  }
  EXPECT_EQ(error_code_of([] { category_from_index(54); }), ErrorCode::IndexOutOfRange);
}

TEST(Category, Categorize) {
  auto runner = [](double price, double volume) {
    Frame f = priced(price);
    f.traded[f.last_traded.value()] = Money::from_double(volume);
    return RunnerBook{std::to_string(price), {f}};
  };
  Market mk;
  for (double p : {2.5, 4.6, 7.0, 12.0, 20.0, 30.0, 50.0}) mk.runners.push_back(runner(p, p == 4.6 ? 40000 : 100));
  const CategoryKey k = categorize(mk, 1, 0);
  EXPECT_EQ(k, (CategoryKey{Favorite::No, RunnerCount::Medium, PriceBand::Medium, Liquidity::High}));
  EXPECT_EQ(category_index(k), 41);
  EXPECT_EQ(categorize(mk, 1, 0), k);

  const CategoryKey fav = categorize(mk, 0, 0);
  EXPECT_EQ(fav.favorite, Favorite::Yes);
  EXPECT_EQ(fav.price, PriceBand::Low);
  EXPECT_EQ(fav.liquidity, Liquidity::Low);

  CategoryThresholds extreme;
  extreme.few_runners_max = 100;
  extreme.low_price_max = 1000;
  extreme.medium_price_max = 1000;
  extreme.low_liquidity_max = 1e12;
  extreme.medium_liquidity_max = 1e12;
  const CategoryKey corner = categorize(mk, 0, 0, extreme);
  EXPECT_EQ(category_index(corner), category_index({Favorite::Yes, RunnerCount::Few, PriceBand::Low, Liquidity::Low}));
  EXPECT_EQ(category_index(corner), 2 * 3);
}

TEST(Category, WomDepthAndTerciles) {
  EXPECT_EQ(wom_depth(PriceBand::High), 2);
  EXPECT_EQ(wom_depth(PriceBand::Medium), 3);
  EXPECT_EQ(wom_depth(PriceBand::Low), 4);
  std::vector<double> v;
  for (int i = 1; i <= 9; ++i) v.push_back(i * 1000.0);
  CategoryThresholds t;
  fit_liquidity_terciles(v, t);
  EXPECT_EQ(t.low_liquidity_max, 3000.0);
  EXPECT_EQ(t.medium_liquidity_max, 6000.0);
}

TEST(Dataset, RoundTrip) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 1);
  std::vector<Example> xs(3);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i].race_id = "1." + std::to_string(100 + i);
    xs[i].runner_id = "r" + std::to_string(i);
    xs[i].category = 41;
    xs[i].target = g(rng) * 100;
    xs[i].label = static_cast<int>(i);
    xs[i].max_variation = -3 + static_cast<int>(i);
    for (auto& v : xs[i].inputs.data) v = g(rng);
  }
  std::stringstream ss;
  write_examples(ss, xs);
  EXPECT_EQ(read_examples(ss), xs);

  std::stringstream bad("1.1\tr\t41\tx\t0\t0\t0\n");
  EXPECT_EQ(error_code_of([&] { read_examples(bad); }), ErrorCode::ParseError);
}
