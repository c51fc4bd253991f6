#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "betlab/features/category.hpp"
#include "betlab/ladder/tick_ladder.hpp"
#include "betlab/mechanisms/types.hpp"
#include "betlab/nnkit/train.hpp"

namespace betlab {

// Everything a pipeline run needs besides its input files. Every key of
// the JSON form is optional; missing keys keep the defaults below.
struct RunConfig {
  std::optional<int> category;  // restrict featurize/train/simulate to one category
  Money stake = Money::pounds(3);
  TimeParams time;  // 20 open, 80 normal, 20 emergency frames
  bool front_line = true;
  TickLadder ladder = TickLadder::standard();
  CategoryThresholds thresholds;
  bool fit_liquidity = false;  // refit liquidity cut points from the ingested markets
  std::uint64_t seed = 1;

  std::int64_t lead_ms = 120000;  // prediction instant before the scheduled start
  double train_fraction = 0.8;    // chronological split of the examples
  std::size_t min_category_examples = kMinCategoryExamples;

  std::string model_kind = "lstm";
  nlohmann::json model_config = nlohmann::json::object();
  nn::TrainConfig train;

  // Class means used by stub bundles: target ticks per predicted class.
  std::array<double, kMovementClasses> stub_class_means{-6.0, -4.0, 0.0, 4.0, 6.0};
};

nlohmann::json to_json(const RunConfig& c);
// Throws ParseError on malformed or out-of-range values.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace betlab
