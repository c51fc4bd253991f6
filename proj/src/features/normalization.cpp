#include "betlab/features/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "betlab/core/error.hpp"
#include "betlab/core/log.hpp"

namespace betlab {

MinMax truncated_minmax(std::span<const double> values, double tail) {
  if (values.size() < 10)
    fail(ErrorCode::TooFewValues, "need at least 10 values, got " + std::to_string(values.size()));
  if (!(tail >= 0.0 && tail < 0.5)) fail(ErrorCode::InvalidArgument, "tail fraction must be in [0, 0.5)");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const auto k = static_cast<std::size_t>(std::floor(tail * static_cast<double>(n)));
  MinMax out{sorted[k], sorted[n - 1 - k], false};
  if (!(out.min < out.max)) {
    const double v = out.min;
    const double pad = std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
    out.min = v - pad;
    out.max = v + pad;
    out.widened = true;
    log_warning("degenerate range at " + std::to_string(v) + ", widened by machine epsilon");
  }
  return out;
}

double normalize(double value, const MinMax& range) {
  if (!(range.min < range.max)) fail(ErrorCode::InvalidArgument, "normalization range is empty");
  if (value <= range.min) return -1.0;
  if (value >= range.max) return 1.0;
  const double r = 2.0 * (value - range.min) / (range.max - range.min) - 1.0;
  return std::clamp(r, -1.0, 1.0);
}

void NormalizationSpec::apply(FeatureMatrix& m) const {
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = normalize(m.at(r, c), columns[c]);
}

NormalizationSpec fit_normalization(std::span<const FeatureMatrix> examples, double tail) {
  NormalizationSpec spec;
  std::vector<double> column;
  for (std::size_t c = 0; c < kVariables; ++c) {
    column.clear();
    for (const auto& ex : examples)
      for (std::size_t r = 0; r < ex.rows; ++r) column.push_back(ex.at(r, c));
    spec.columns[c] = truncated_minmax(column, tail);
  }
  return spec;
}

std::string to_json(const NormalizationSpec& spec) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : spec.columns) j.push_back({{"min", c.min}, {"max", c.max}});
  return j.dump();
}

NormalizationSpec normalization_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("normalization spec: ") + e.what());
  }
  if (!j.is_array() || j.size() != kVariables) fail(ErrorCode::ParseError, "normalization spec needs 9 columns");
  NormalizationSpec spec;
  for (std::size_t c = 0; c < kVariables; ++c) {
    spec.columns[c].min = j[c].at("min").get<double>();
    spec.columns[c].max = j[c].at("max").get<double>();
    if (!(spec.columns[c].min < spec.columns[c].max)) fail(ErrorCode::ParseError, "normalization column with min >= max");
  }
  return spec;
}

}  // namespace betlab
