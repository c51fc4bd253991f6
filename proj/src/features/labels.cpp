#include "betlab/features/labels.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "betlab/core/error.hpp"

namespace betlab {

QuintileLabels label_by_quintiles(std::span<const double> targets) {
  const std::size_t n = targets.size();
  if (n < 5) fail(ErrorCode::TooFewValues, "need at least 5 targets, got " + std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return targets[a] < targets[b]; });
  if (targets[order.front()] == targets[order.back()])
    fail(ErrorCode::DegenerateDistribution, "all targets are equal");

  QuintileLabels out;
  out.labels.assign(n, 0);
  for (std::size_t rank = 0; rank < n; ++rank) out.labels[order[rank]] = static_cast<int>(5 * rank / n);
  for (std::size_t j = 0; j < 4; ++j) {
    const std::size_t r = ((j + 1) * n + 4) / 5;  // ceil
    out.boundaries[j] = targets[order[r - 1]];
  }
  return out;
}

int class_for(double value, const std::array<double, 4>& boundaries) {
  int c = 0;
  for (double b : boundaries)
    if (value > b) ++c;
  return c;
}

}  // namespace betlab
