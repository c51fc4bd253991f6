#include "betlab/nnkit/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "betlab/core/error.hpp"

namespace betlab::nn {

GradCheckResult check_gradients(const std::function<Var()>& loss, const std::vector<Var>& leaves, double step,
                                double floor) {
  for (const auto& leaf : leaves) {
    leaf->requires_grad = true;
    leaf->grad = Tensor();
  }
  const Var root = loss();
  if (root->value.size() != 1) fail(ErrorCode::ShapeMismatch, "gradient check needs a scalar loss");
  backward(root);

  GradCheckResult r;
  for (std::size_t li = 0; li < leaves.size(); ++li) {
    Node& leaf = *leaves[li];
    const Tensor analytic = leaf.grad.empty() ? Tensor(leaf.value.shape()) : leaf.grad;
    for (std::size_t k = 0; k < leaf.value.size(); ++k) {
      const double saved = leaf.value[k];
      leaf.value[k] = saved + step;
      const double up = loss()->value[0];
      leaf.value[k] = saved - step;
      const double down = loss()->value[0];
      leaf.value[k] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double a = analytic[k];
      const double err = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
      ++r.checked;
      if (r.worst.empty() || err > r.max_relative_error) {
        r.max_relative_error = err;
        r.worst = std::to_string(li) + "#" + std::to_string(k);
      }
    }
  }
  return r;
}

}  // namespace betlab::nn
