#include "betlab/harness/bundle.hpp"

#include <fstream>

#include "betlab/core/error.hpp"

namespace betlab {

const CategoryModel* ModelBundle::find(int category) const {
  auto it = categories.find(category);
  return it == categories.end() ? nullptr : &it->second;
}

namespace {

nlohmann::json thresholds_json(const CategoryThresholds& t) {
  return {{"few_runners_max", t.few_runners_max},     {"medium_runners_max", t.medium_runners_max},
          {"low_price_max", t.low_price_max},         {"medium_price_max", t.medium_price_max},
          {"low_liquidity_max", t.low_liquidity_max}, {"medium_liquidity_max", t.medium_liquidity_max}};
}

CategoryThresholds thresholds_from(const nlohmann::json& j) {
  CategoryThresholds t;
  t.few_runners_max = j.at("few_runners_max").get<int>();
  t.medium_runners_max = j.at("medium_runners_max").get<int>();
  t.low_price_max = j.at("low_price_max").get<double>();
  t.medium_price_max = j.at("medium_price_max").get<double>();
  t.low_liquidity_max = j.at("low_liquidity_max").get<double>();
  t.medium_liquidity_max = j.at("medium_liquidity_max").get<double>();
  return t;
}

}  // namespace

nlohmann::json to_json(const ModelBundle& bundle) {
  nlohmann::json j;
  j["format"] = "betlab-bundle";
  j["thresholds"] = thresholds_json(bundle.thresholds);
  j["categories"] = nlohmann::json::array();
  for (const auto& [index, m] : bundle.categories) {
    nlohmann::json c;
    c["index"] = index;
    c["path"] = category_path(category_from_index(index));
    c["model"] = nn::save_classifier(*m.classifier);
    c["normalization"] = nlohmann::json::parse(to_json(m.normalization));
    c["boundaries"] = m.boundaries;
    for (const auto& mean : m.stats.mean_max_variation)
      c["class_means"].push_back(mean ? nlohmann::json(*mean) : nlohmann::json(nullptr));
    j["categories"].push_back(std::move(c));
  }
  return j;
}

ModelBundle bundle_from_json(const nlohmann::json& j) {
  ModelBundle b;
  try {
    if (j.value("format", "") != "betlab-bundle") fail(ErrorCode::ParseError, "not a model bundle");
    b.thresholds = thresholds_from(j.at("thresholds"));
    for (const auto& c : j.at("categories")) {
      const int index = c.at("index").get<int>();
      category_from_index(index);
      CategoryModel m;
      m.classifier = nn::load_classifier(c.at("model"));
      m.normalization = normalization_from_json(c.at("normalization").dump());
      m.boundaries = c.at("boundaries").get<std::array<double, 4>>();
      const auto& means = c.at("class_means");
      if (means.size() != kMovementClasses) fail(ErrorCode::ParseError, "class_means needs 5 entries");
      for (int k = 0; k < kMovementClasses; ++k)
        if (!means[k].is_null()) m.stats.mean_max_variation[k] = means[k].get<double>();
      b.categories[index] = std::move(m);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bundle: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(ErrorCode::ParseError, std::string("bundle: ") + e.what());
  }
  return b;
}

void save_bundle(const std::string& path, const ModelBundle& bundle) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << to_json(bundle).dump() << '\n';
}

ModelBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return bundle_from_json(j);
}

ModelBundle stub_bundle(int cls, const std::array<double, kMovementClasses>& class_means,
                        const CategoryThresholds& thresholds) {
  if (cls < 0 || cls >= kMovementClasses) fail(ErrorCode::InvalidArgument, "stub class out of range");
  std::vector<double> probs(kMovementClasses, 0.025);
  probs[static_cast<std::size_t>(cls)] = 0.9;
  auto model = std::make_shared<const nn::ConstantClassifier>(probs);
  ModelBundle b;
  b.thresholds = thresholds;
  for (int i = 0; i < kCategoryCount; ++i) {
    CategoryModel m;
    m.classifier = model;
    for (int k = 0; k < kMovementClasses; ++k) m.stats.mean_max_variation[k] = class_means[k];
    b.categories[i] = m;
  }
  return b;
}

}  // namespace betlab
