#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "betlab/nnkit/tensor.hpp"

namespace betlab::nn {

struct Node;
using Var = std::shared_ptr<Node>;

// One value on the tape. Leaves with requires_grad accumulate gradient across
// backward passes until zeroed.
struct Node {
  Tensor value;
  Tensor grad;
  bool requires_grad = false;
  bool forward_only = false;  // no backward implementation
  std::string op;
  std::vector<Var> inputs;
  std::function<void(Node&)> backward_fn;

  Tensor& ensure_grad();
  void zero_grad();
};

Var constant(Tensor value);
Var parameter(Tensor value);

// Records a node whose requires_grad follows its inputs.
Var make_node(Tensor value, std::vector<Var> inputs, std::string op, std::function<void(Node&)> backward_fn);

// Seeds d(root)/d(root) = 1 for every element of root and runs the tape in
// reverse. Throws GraphContainsForwardOnlyLayer if a forward-only node lies on
// a path that needs gradients.
void backward(const Var& root);

// True when any node reachable from root is forward-only.
bool graph_has_forward_only(const Var& root);

}  // namespace betlab::nn
