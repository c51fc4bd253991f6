#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "betlab/features/dataset.hpp"
#include "betlab/harness/bundle.hpp"
#include "betlab/harness/config.hpp"
#include "betlab/harness/metrics.hpp"

namespace betlab {

// Every "*.tsv" market file in a directory, in file name order.
std::vector<Market> load_markets(const std::filesystem::path& dir);
// One file per market named <market_id>.tsv.
void save_markets(const std::filesystem::path& dir, const std::vector<Market>& markets);

// Raw examples (inputs not normalized, labels unset), one per runner with a
// traded price at the prediction instant, ordered by market start.
std::vector<Example> extract_examples(const std::vector<Market>& markets, const RunConfig& config,
                                      const CategoryThresholds& thresholds);

struct CategoryData {
  std::vector<Example> train;
  std::vector<Example> validation;
  NormalizationSpec normalization;
  std::array<double, 4> boundaries{};
  ClassStats stats;
};

struct FeatureSet {
  CategoryThresholds thresholds;
  std::map<int, CategoryData> categories;
};

// Groups examples by category, drops categories below the configured
// minimum, splits each chronologically, then fits labels and normalization
// on the training part only and applies them to both parts.
FeatureSet featurize(const std::vector<Market>& markets, const RunConfig& config);
FeatureSet prepare_categories(const std::vector<Example>& examples, const CategoryThresholds& thresholds,
                              const RunConfig& config);

// <dir>/thresholds.json and <dir>/<category>/{train.tsv,validation.tsv,meta.json}.
void save_feature_set(const std::filesystem::path& dir, const FeatureSet& set);
FeatureSet load_feature_set(const std::filesystem::path& dir);

nn::Dataset to_dataset(const std::vector<Example>& examples);

struct TrainLogEntry {
  int category = 0;
  std::size_t epoch = 0;
  double loss = 0.0;
  double accuracy = 0.0;
};

// One model per category of the set (or only config.category).
ModelBundle train_bundle(const FeatureSet& set, const RunConfig& config, std::vector<TrainLogEntry>* log = nullptr);

struct Evaluation {
  std::map<int, ConfusionMatrix> categories;
  ConfusionMatrix overall;
};

// Confusion matrices on the validation examples. Categories without a
// model raise MissingCategoryModel.
Evaluation evaluate_bundle(const ModelBundle& bundle, const FeatureSet& set, const RunConfig& config);
nlohmann::json evaluation_json(const Evaluation& e, std::optional<double> reference_accuracy = std::nullopt);

}  // namespace betlab
