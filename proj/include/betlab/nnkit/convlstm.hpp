#pragma once

#include "betlab/nnkit/layers.hpp"

namespace betlab::nn {

// Recurrent over segments of x (S, T, V, C). Gates come from convolutions of
// the current segment (kx: kH, kW, C, 4F) and the previous hidden map
// (kh: kH, kW, F, 4F) plus bias (4F), in the order input, forget, cell,
// output. Time uses Same padding; variables use roll padding when
// roll_variables is set, Same otherwise. Returns the last hidden map (T, V, F).
// Forward only: the node refuses backward.
Var convlstm2d(const Var& x, const Var& kx, const Var& kh, const Var& b, bool roll_variables);

class ConvLstm2D {
 public:
  ConvLstm2D() = default;
  ConvLstm2D(std::size_t channels, std::size_t filters, std::size_t kernel_h, std::size_t kernel_w, bool roll_variables,
             Rng& rng);
  Var operator()(const Var& x) const { return convlstm2d(x, kx, kh, b, roll_variables); }
  void collect(ParamList& out, const std::string& prefix) const;

  Var kx, kh, b;
  bool roll_variables = true;
};

}  // namespace betlab::nn
