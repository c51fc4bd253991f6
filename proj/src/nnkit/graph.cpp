#include "betlab/nnkit/graph.hpp"

#include <unordered_set>

#include "betlab/core/error.hpp"

namespace betlab::nn {

Tensor& Node::ensure_grad() {
  if (grad.shape() != value.shape()) grad = Tensor(value.shape());
  return grad;
}

void Node::zero_grad() {
  if (!grad.empty()) grad.fill(0.0);
}

Var constant(Tensor value) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->op = "constant";
  return n;
}

Var parameter(Tensor value) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->requires_grad = true;
  n->op = "parameter";
  return n;
}

Var make_node(Tensor value, std::vector<Var> inputs, std::string op, std::function<void(Node&)> backward_fn) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->op = std::move(op);
  for (const auto& in : inputs) n->requires_grad = n->requires_grad || in->requires_grad;
  n->inputs = std::move(inputs);
  if (n->requires_grad) n->backward_fn = std::move(backward_fn);
  return n;
}

namespace {

std::vector<Node*> topo_order(const Var& root) {
  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<std::pair<Node*, std::size_t>> stack{{root.get(), 0}};
  seen.insert(root.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node* child = node->inputs[next++].get();
      if (seen.insert(child).second) stack.emplace_back(child, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;  // inputs before their consumers
}

}  // namespace

void backward(const Var& root) {
  const auto order = topo_order(root);
  root->ensure_grad().fill(1.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (!n->requires_grad || n->inputs.empty()) continue;
    if (n->forward_only)
      fail(ErrorCode::GraphContainsForwardOnlyLayer, "'" + n->op + "' has no backward pass");
    if (n->grad.empty() || !n->backward_fn) continue;
    n->backward_fn(*n);
  }
}

bool graph_has_forward_only(const Var& root) {
  for (Node* n : topo_order(root))
    if (n->forward_only) return true;
  return false;
}

}  // namespace betlab::nn
