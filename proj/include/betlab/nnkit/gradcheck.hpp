#pragma once

#include <functional>
#include <string>
#include <vector>

#include "betlab/nnkit/graph.hpp"

namespace betlab::nn {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::string worst;  // "input#index" of the worst element
};

// Compares backward() against central differences for every element of the
// given leaves. `loss` must rebuild the graph from the leaves' current values
// and return a scalar. Relative error is |a - n| / max(|a|, |n|, floor).
GradCheckResult check_gradients(const std::function<Var()>& loss, const std::vector<Var>& leaves, double step = 1e-5,
                                double floor = 1e-2);

}  // namespace betlab::nn
