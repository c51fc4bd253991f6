#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include <json.hpp>

namespace betlab {

inline constexpr int kClasses = 5;

// Rows are real classes, columns predicted classes.
class ConfusionMatrix {
 public:
  using Counts = std::array<std::array<std::int64_t, kClasses>, kClasses>;

  ConfusionMatrix() = default;
  // Throws InvalidArgument on a negative count.
  explicit ConfusionMatrix(const Counts& counts);

  void add(int real, int predicted, std::int64_t count = 1);
  std::int64_t at(int real, int predicted) const { return counts_[real][predicted]; }
  const Counts& counts() const { return counts_; }

  std::int64_t row_sum(int real) const;
  std::int64_t column_sum(int predicted) const;
  std::int64_t trace() const;
  std::int64_t total() const;

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  Counts counts_{};
};

// Throws EmptyRow / EmptyColumn.
double recall(const ConfusionMatrix& m, int cls);
double precision(const ConfusionMatrix& m, int cls);
// Throws EmptyRow when the matrix is empty.
double accuracy(const ConfusionMatrix& m);

// Fractions in [0, 1]; nullopt where the row or column is empty.
struct MetricsReport {
  std::array<std::optional<double>, kClasses> recall{};
  std::array<std::optional<double>, kClasses> precision{};
  std::optional<double> accuracy;
};

MetricsReport metrics(const ConfusionMatrix& m);

enum class PlCell { Unmarked, Green, Red };
using PlMask = std::array<std::array<PlCell, kClasses>, kClasses>;

// Same-direction real/predicted pairs are green, opposite directions red;
// the neutral row and column stay unmarked.
PlMask direction_mask();

struct PlExpectation {
  std::int64_t positive = 0;
  std::int64_t negative = 0;
  std::int64_t net() const { return positive - negative; }
};

PlExpectation pl_expectation(const ConfusionMatrix& m, const PlMask& mask = direction_mask());

// Matrix, metrics in percent (null when undefined) and the expectation
// counts. With a reference accuracy (percent) the report also says whether
// it matches the recomputed value at two decimals.
nlohmann::json metrics_json(const ConfusionMatrix& m, std::optional<double> reference_accuracy = std::nullopt);

}  // namespace betlab
