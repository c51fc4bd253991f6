#pragma once

#include "betlab/nnkit/graph.hpp"

namespace betlab::nn {

// Gate order in the stacked weights: input, forget, cell, output.
struct LstmStep {
  Tensor h;
  Tensor c;
  Tensor gates;  // activated i, f, g, o (4H)
};

// One step with input x (in), previous state h, c (H), weights
// wx (in, 4H), wh (H, 4H) and bias b (4H).
LstmStep lstm_cell_step(const Tensor& x, const Tensor& h, const Tensor& c, const Tensor& wx, const Tensor& wh,
                        const Tensor& b);

// Runs the cell over x (T, in) from a zero state and returns every hidden
// state (T, H). With reverse the sequence is read from the end; row t of the
// output still belongs to input row t.
Var lstm(const Var& x, const Var& wx, const Var& wh, const Var& b, bool reverse = false);

}  // namespace betlab::nn
