#pragma once

#include <vector>

#include "betlab/nnkit/padding.hpp"
#include "betlab/nnkit/tensor.hpp"

namespace betlab::nn {

// Input (H, W, Cin), kernel (kH, kW, Cin, Cout), bias (Cout), output (Ho, Wo, Cout).
struct ConvSpec {
  int stride_h = 1;
  int stride_w = 1;
  int dilation_h = 1;
  int dilation_w = 1;
  PaddingSpec padding;

  friend bool operator==(const ConvSpec&, const ConvSpec&) = default;
};

struct ConvGeometry {
  std::size_t h = 0, w = 0, cin = 0, cout = 0, kh = 0, kw = 0;
  std::size_t out_h = 0, out_w = 0;
  std::vector<int> rowmap;  // padded row -> source row or -1
  std::vector<int> colmap;
};

ConvGeometry conv_geometry(const Shape& x, const Shape& k, const ConvSpec& spec);

// OpenMP kernel: output positions are independent and computed in a fixed
// order, so results do not depend on the thread count.
Tensor conv2d_forward(const Tensor& x, const Tensor& k, const Tensor& b, const ConvSpec& spec);
// Serial: materializes the padded input, then runs a plain valid convolution.
Tensor conv2d_forward_reference(const Tensor& x, const Tensor& k, const Tensor& b, const ConvSpec& spec);

struct ConvGrads {
  Tensor dx;
  Tensor dk;
  Tensor db;
};

ConvGrads conv2d_backward(const Tensor& x, const Tensor& k, const ConvSpec& spec, const Tensor& dy);
ConvGrads conv2d_backward_reference(const Tensor& x, const Tensor& k, const ConvSpec& spec, const Tensor& dy);

}  // namespace betlab::nn
