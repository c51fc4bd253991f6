#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "betlab/features/example.hpp"

namespace betlab {

struct MinMax {
  double min = -1.0;
  double max = 1.0;
  bool widened = false;  // min == max on the input and the range was opened up

  friend bool operator==(const MinMax&, const MinMax&) = default;
};

// Nearest-rank bounds after dropping `tail` of the sorted values from each
// end: k = floor(tail * n), result (sorted[k], sorted[n-1-k]). Needs >= 10 values.
MinMax truncated_minmax(std::span<const double> values, double tail = 0.10);

// Clamp into [min, max] then map linearly onto [-1, 1].
double normalize(double value, const MinMax& range);

struct NormalizationSpec {
  std::array<MinMax, kVariables> columns;

  void apply(FeatureMatrix& m) const;
  friend bool operator==(const NormalizationSpec&, const NormalizationSpec&) = default;
};

// One truncated range per column over every timestep of every example.
NormalizationSpec fit_normalization(std::span<const FeatureMatrix> examples, double tail = 0.10);

std::string to_json(const NormalizationSpec& spec);
NormalizationSpec normalization_from_json(const std::string& text);

}  // namespace betlab
