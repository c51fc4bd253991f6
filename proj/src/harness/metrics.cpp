#include "betlab/harness/metrics.hpp"

#include <cmath>

#include "betlab/core/error.hpp"

namespace betlab {

ConfusionMatrix::ConfusionMatrix(const Counts& counts) : counts_(counts) {
  for (const auto& row : counts_)
    for (auto c : row)
      if (c < 0) fail(ErrorCode::InvalidArgument, "negative confusion count");
}

void ConfusionMatrix::add(int real, int predicted, std::int64_t count) {
  if (real < 0 || real >= kClasses || predicted < 0 || predicted >= kClasses)
    fail(ErrorCode::IndexOutOfRange, "class out of range");
  if (count < 0) fail(ErrorCode::InvalidArgument, "negative confusion count");
  counts_[real][predicted] += count;
}

std::int64_t ConfusionMatrix::row_sum(int real) const {
  std::int64_t s = 0;
  for (int j = 0; j < kClasses; ++j) s += counts_[real][j];
  return s;
}

std::int64_t ConfusionMatrix::column_sum(int predicted) const {
  std::int64_t s = 0;
  for (int i = 0; i < kClasses; ++i) s += counts_[i][predicted];
  return s;
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t s = 0;
  for (int i = 0; i < kClasses; ++i) s += counts_[i][i];
  return s;
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t s = 0;
  for (int i = 0; i < kClasses; ++i) s += row_sum(i);
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (int i = 0; i < kClasses; ++i)
    for (int j = 0; j < kClasses; ++j) counts_[i][j] += other.counts_[i][j];
  return *this;
}

double recall(const ConfusionMatrix& m, int cls) {
  const auto n = m.row_sum(cls);
  if (n == 0) fail(ErrorCode::EmptyRow, "no real examples of class " + std::to_string(cls));
  return static_cast<double>(m.at(cls, cls)) / static_cast<double>(n);
}

double precision(const ConfusionMatrix& m, int cls) {
  const auto n = m.column_sum(cls);
  if (n == 0) fail(ErrorCode::EmptyColumn, "class " + std::to_string(cls) + " never predicted");
  return static_cast<double>(m.at(cls, cls)) / static_cast<double>(n);
}

double accuracy(const ConfusionMatrix& m) {
  if (m.total() == 0) fail(ErrorCode::EmptyRow, "empty confusion matrix");
  return static_cast<double>(m.trace()) / static_cast<double>(m.total());
}

MetricsReport metrics(const ConfusionMatrix& m) {
  MetricsReport r;
  for (int c = 0; c < kClasses; ++c) {
    if (m.row_sum(c) > 0) r.recall[c] = recall(m, c);
    if (m.column_sum(c) > 0) r.precision[c] = precision(m, c);
  }
  if (m.total() > 0) r.accuracy = accuracy(m);
  return r;
}

PlMask direction_mask() {
  PlMask mask{};
  auto dir = [](int c) { return c < 2 ? -1 : c > 2 ? 1 : 0; };
  for (int i = 0; i < kClasses; ++i)
    for (int j = 0; j < kClasses; ++j) {
      const int a = dir(i), b = dir(j);
      if (a == 0 || b == 0) continue;
      mask[i][j] = a == b ? PlCell::Green : PlCell::Red;
    }
  return mask;
}

PlExpectation pl_expectation(const ConfusionMatrix& m, const PlMask& mask) {
  PlExpectation e;
  for (int i = 0; i < kClasses; ++i)
    for (int j = 0; j < kClasses; ++j) {
      if (mask[i][j] == PlCell::Green) e.positive += m.at(i, j);
      if (mask[i][j] == PlCell::Red) e.negative += m.at(i, j);
    }
  return e;
}

namespace {

nlohmann::json percent(const std::optional<double>& v) {
  if (!v) return nullptr;
  return std::round(*v * 10000.0) / 100.0;
}

}  // namespace

nlohmann::json metrics_json(const ConfusionMatrix& m, std::optional<double> reference_accuracy) {
  const MetricsReport r = metrics(m);
  nlohmann::json j;
  j["matrix"] = m.counts();
  j["total"] = m.total();
  for (int c = 0; c < kClasses; ++c) {
    j["recall"].push_back(percent(r.recall[c]));
    j["precision"].push_back(percent(r.precision[c]));
  }
  j["accuracy"] = percent(r.accuracy);
  const PlExpectation e = pl_expectation(m);
  j["expected_positive"] = e.positive;
  j["expected_negative"] = e.negative;
  if (reference_accuracy) {
    j["reference_accuracy"] = *reference_accuracy;
    const bool same = r.accuracy && std::round(*r.accuracy * 10000.0) == std::round(*reference_accuracy * 100.0);
    j["accuracy_matches_reference"] = same;
  }
  return j;
}

}  // namespace betlab
