#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "betlab/features/category.hpp"
#include "betlab/features/normalization.hpp"
#include "betlab/mechanisms/selection.hpp"
#include "betlab/nnkit/models.hpp"

namespace betlab {

// What the trading loop needs for one runner category.
struct CategoryModel {
  std::shared_ptr<const nn::Classifier> classifier;
  NormalizationSpec normalization;
  std::array<double, 4> boundaries{};  // quintile edges of the training targets
  ClassStats stats;
};

struct ModelBundle {
  CategoryThresholds thresholds;
  std::map<int, CategoryModel> categories;

  const CategoryModel* find(int category) const;
};

nlohmann::json to_json(const ModelBundle& bundle);
// Throws ParseError.
ModelBundle bundle_from_json(const nlohmann::json& j);
void save_bundle(const std::string& path, const ModelBundle& bundle);
ModelBundle load_bundle(const std::string& path);

// Every category answers `cls` with probability 0.9 and uses the given
// per-class means for mechanism parameters.
ModelBundle stub_bundle(int cls, const std::array<double, kMovementClasses>& class_means,
                        const CategoryThresholds& thresholds = {});

}  // namespace betlab
