#include "betlab/nnkit/convlstm.hpp"

#include <cmath>

#include "betlab/core/error.hpp"

namespace betlab::nn {

Var convlstm2d(const Var& x, const Var& kx, const Var& kh, const Var& b, bool roll_variables) {
  const Tensor& xv = x->value;
  if (xv.rank() != 4) fail(ErrorCode::ShapeMismatch, "convlstm2d expects (S, T, V, C), got " + shape_str(xv.shape()));
  const std::size_t S = xv.dim(0), T = xv.dim(1), V = xv.dim(2), C = xv.dim(3);
  const Tensor& kxv = kx->value;
  const Tensor& khv = kh->value;
  if (kxv.rank() != 4 || kxv.dim(2) != C || kxv.dim(3) % 4 != 0)
    fail(ErrorCode::ShapeMismatch, "convlstm2d input kernel " + shape_str(kxv.shape()));
  const std::size_t F = kxv.dim(3) / 4;
  if (khv.shape() != Shape{kxv.dim(0), kxv.dim(1), F, 4 * F} || b->value.shape() != Shape{4 * F})
    fail(ErrorCode::ShapeMismatch, "convlstm2d recurrent kernel or bias does not match");

  ConvSpec spec;
  spec.padding = {{PadMethod::Same}, {roll_variables ? PadMethod::Roll : PadMethod::Same}};
  const Tensor no_bias(Shape{4 * F});
  Tensor h(Shape{T, V, F});
  Tensor c(Shape{T, V, F});
  const std::size_t seg = T * V * C;
  for (std::size_t s = 0; s < S; ++s) {
    Tensor xs(Shape{T, V, C}, std::vector<double>(xv.data() + s * seg, xv.data() + (s + 1) * seg));
    const Tensor zx = conv2d_forward(xs, kxv, b->value, spec);
    const Tensor zh = conv2d_forward(h, khv, no_bias, spec);
    for (std::size_t p = 0; p < T * V; ++p) {
      const double* a = zx.data() + p * 4 * F;
      const double* r = zh.data() + p * 4 * F;
      for (std::size_t k = 0; k < F; ++k) {
        const double i = 1.0 / (1.0 + std::exp(-(a[k] + r[k])));
        const double f = 1.0 / (1.0 + std::exp(-(a[F + k] + r[F + k])));
        const double g = std::tanh(a[2 * F + k] + r[2 * F + k]);
        const double o = 1.0 / (1.0 + std::exp(-(a[3 * F + k] + r[3 * F + k])));
        const double cn = f * c[p * F + k] + i * g;
        c[p * F + k] = cn;
        h[p * F + k] = o * std::tanh(cn);
      }
    }
  }
  Var out = make_node(std::move(h), {x, kx, kh, b}, "convlstm2d", nullptr);
  out->forward_only = true;
  return out;
}

ConvLstm2D::ConvLstm2D(std::size_t channels, std::size_t filters, std::size_t kernel_h, std::size_t kernel_w, bool roll,
                       Rng& rng)
    : kx(parameter(glorot_uniform(Shape{kernel_h, kernel_w, channels, 4 * filters}, kernel_h * kernel_w * channels,
                                  kernel_h * kernel_w * 4 * filters, rng))),
      kh(parameter(glorot_uniform(Shape{kernel_h, kernel_w, filters, 4 * filters}, kernel_h * kernel_w * filters,
                                  kernel_h * kernel_w * 4 * filters, rng))),
      b(parameter(Tensor(Shape{4 * filters}))),
      roll_variables(roll) {}

void ConvLstm2D::collect(ParamList& out, const std::string& prefix) const {
  out.push_back({prefix + ".kx", kx});
  out.push_back({prefix + ".kh", kh});
  out.push_back({prefix + ".b", b});
}

}  // namespace betlab::nn
