#pragma once

#include <string_view>
#include <vector>

#include "betlab/nnkit/conv.hpp"
#include "betlab/nnkit/graph.hpp"

namespace betlab::nn {

enum class Activation { Linear, Relu, Tanh, Sigmoid };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view s);

Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);  // elementwise, same shape
Var scale(const Var& a, double s);
Var tanh(const Var& x);
Var sigmoid(const Var& x);
Var relu(const Var& x);
Var activate(const Var& x, Activation a);

// x (..., in) times w (in, out) plus b (out).
Var dense(const Var& x, const Var& w, const Var& b);
// (H, W, Cin) with kernel (kH, kW, Cin, Cout) and bias (Cout).
Var conv2d(const Var& x, const Var& k, const Var& b, const ConvSpec& spec);
Var pad(const Var& x, const PaddingSpec& spec, PadWidth rows, PadWidth cols);

// Softmax along one axis of any rank.
Var softmax(const Var& x, std::size_t axis);
// Softmax over every element.
Var softmax_all(const Var& x);
// -log softmax(logits)[label] for a rank-1 logits vector.
Var softmax_cross_entropy(const Var& logits, int label);

Var reshape(const Var& x, Shape shape);
// Concatenation along the last axis.
Var concat_last(const std::vector<Var>& parts);
// `count` entries starting at `begin` of the last axis.
Var slice_last(const Var& x, std::size_t begin, std::size_t count);
// Swaps the two axes of a rank-2 tensor.
Var transpose(const Var& x);
// Row t of a rank-2 tensor as a rank-1 tensor.
Var row(const Var& x, std::size_t t);
// Sum over the first axis of a rank-2 tensor.
Var sum_rows(const Var& x);
// (H, W, C) -> (C).
Var global_average_pool(const Var& x);
// Mean over the last axis, which is kept with extent 1.
Var mean_last(const Var& x);
// Scalar sum of x * w for a fixed tensor w.
Var weighted_sum(const Var& x, const Tensor& w);

}  // namespace betlab::nn
