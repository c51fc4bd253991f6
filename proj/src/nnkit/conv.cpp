#include "betlab/nnkit/conv.hpp"

#include "betlab/core/error.hpp"

namespace betlab::nn {

namespace {

double fill_value(const ConvSpec& spec, int r, int c) {
  return r < 0 ? spec.padding.rows.value : (c < 0 ? spec.padding.cols.value : 0.0);
}

void check_bias(const Tensor& b, std::size_t cout) {
  if (b.rank() != 1 || b.dim(0) != cout)
    fail(ErrorCode::ShapeMismatch, "bias " + shape_str(b.shape()) + " for " + std::to_string(cout) + " channels");
}

}  // namespace

ConvGeometry conv_geometry(const Shape& x, const Shape& k, const ConvSpec& spec) {
  if (x.size() != 3) fail(ErrorCode::ShapeMismatch, "conv input must be (H, W, C), got " + shape_str(x));
  if (k.size() != 4) fail(ErrorCode::ShapeMismatch, "conv kernel must be (kH, kW, Cin, Cout), got " + shape_str(k));
  if (x[2] != k[2])
    fail(ErrorCode::ShapeMismatch, "input has " + std::to_string(x[2]) + " channels, kernel expects " + std::to_string(k[2]));
  if (spec.stride_h < 1 || spec.stride_w < 1) fail(ErrorCode::InvalidArgument, "stride must be positive");
  ConvGeometry g;
  g.h = x[0], g.w = x[1], g.cin = x[2];
  g.kh = k[0], g.kw = k[1], g.cout = k[3];
  const int kh = static_cast<int>(g.kh), kw = static_cast<int>(g.kw);
  g.rowmap = pad_index_map(static_cast<int>(g.h), spec.padding.rows, conv_pad_width(spec.padding.rows, kh, spec.dilation_h));
  g.colmap = pad_index_map(static_cast<int>(g.w), spec.padding.cols, conv_pad_width(spec.padding.cols, kw, spec.dilation_w));
  const long span_h = static_cast<long>(spec.dilation_h) * (kh - 1) + 1;
  const long span_w = static_cast<long>(spec.dilation_w) * (kw - 1) + 1;
  const long ph = static_cast<long>(g.rowmap.size()), pw = static_cast<long>(g.colmap.size());
  if (ph < span_h || pw < span_w)
    fail(ErrorCode::ShapeMismatch, "kernel " + shape_str(k) + " larger than padded input " + shape_str(x));
  g.out_h = static_cast<std::size_t>((ph - span_h) / spec.stride_h + 1);
  g.out_w = static_cast<std::size_t>((pw - span_w) / spec.stride_w + 1);
  return g;
}

Tensor conv2d_forward(const Tensor& x, const Tensor& k, const Tensor& b, const ConvSpec& spec) {
  const ConvGeometry g = conv_geometry(x.shape(), k.shape(), spec);
  check_bias(b, g.cout);
  Tensor y(Shape{g.out_h, g.out_w, g.cout});
  const double* xp = x.data();
  const double* kp = k.data();
  const double* bp = b.data();
  double* yp = y.data();
  const long oh = static_cast<long>(g.out_h), ow = static_cast<long>(g.out_w);
  const std::size_t cin = g.cin, cout = g.cout;
  const bool parallel = g.out_h * g.out_w * g.kh * g.kw * cin * cout > 32768;

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
  for (long i = 0; i < oh; ++i) {
    for (long j = 0; j < ow; ++j) {
      double* acc = yp + (static_cast<std::size_t>(i) * g.out_w + static_cast<std::size_t>(j)) * cout;
      for (std::size_t co = 0; co < cout; ++co) acc[co] = bp[co];
      for (std::size_t a = 0; a < g.kh; ++a) {
        const int r = g.rowmap[static_cast<std::size_t>(i) * spec.stride_h + a * spec.dilation_h];
        for (std::size_t bb = 0; bb < g.kw; ++bb) {
          const int c = g.colmap[static_cast<std::size_t>(j) * spec.stride_w + bb * spec.dilation_w];
          const double* kk = kp + (a * g.kw + bb) * cin * cout;
          if (r < 0 || c < 0) {
            const double v = fill_value(spec, r, c);
            if (v == 0.0) continue;
            for (std::size_t ci = 0; ci < cin; ++ci)
              for (std::size_t co = 0; co < cout; ++co) acc[co] += v * kk[ci * cout + co];
            continue;
          }
          const double* xv = xp + (static_cast<std::size_t>(r) * g.w + static_cast<std::size_t>(c)) * cin;
          for (std::size_t ci = 0; ci < cin; ++ci) {
            const double v = xv[ci];
            for (std::size_t co = 0; co < cout; ++co) acc[co] += v * kk[ci * cout + co];
          }
        }
      }
    }
  }
  return y;
}

Tensor conv2d_forward_reference(const Tensor& x, const Tensor& k, const Tensor& b, const ConvSpec& spec) {
  const ConvGeometry g = conv_geometry(x.shape(), k.shape(), spec);
  check_bias(b, g.cout);
  const PadWidth rw = conv_pad_width(spec.padding.rows, static_cast<int>(g.kh), spec.dilation_h);
  const PadWidth cw = conv_pad_width(spec.padding.cols, static_cast<int>(g.kw), spec.dilation_w);
  const Tensor p = pad_tensor(x, spec.padding, rw, cw);
  Tensor y(Shape{g.out_h, g.out_w, g.cout});
  for (std::size_t i = 0; i < g.out_h; ++i)
    for (std::size_t j = 0; j < g.out_w; ++j)
      for (std::size_t co = 0; co < g.cout; ++co) {
        double acc = b[co];
        for (std::size_t a = 0; a < g.kh; ++a)
          for (std::size_t bb = 0; bb < g.kw; ++bb)
            for (std::size_t ci = 0; ci < g.cin; ++ci)
              acc += p.at(i * spec.stride_h + a * spec.dilation_h, j * spec.stride_w + bb * spec.dilation_w, ci) *
                     k[((a * g.kw + bb) * g.cin + ci) * g.cout + co];
        y.at(i, j, co) = acc;
      }
  return y;
}

ConvGrads conv2d_backward(const Tensor& x, const Tensor& k, const ConvSpec& spec, const Tensor& dy) {
  const ConvGeometry g = conv_geometry(x.shape(), k.shape(), spec);
  if (dy.shape() != Shape{g.out_h, g.out_w, g.cout})
    fail(ErrorCode::ShapeMismatch, "upstream gradient " + shape_str(dy.shape()) + " does not match conv output");
  ConvGrads out{Tensor(x.shape()), Tensor(k.shape()), Tensor(Shape{g.cout})};
  const std::size_t cin = g.cin, cout = g.cout;
  const double* dyp = dy.data();

  for (std::size_t p = 0; p < g.out_h * g.out_w; ++p)
    for (std::size_t co = 0; co < cout; ++co) out.db[co] += dyp[p * cout + co];

  // Kernel gradient: each tap owns its slice of dk.
  const long taps = static_cast<long>(g.kh * g.kw);
  double* dkp = out.dk.data();
  const double* xp = x.data();
  const bool parallel = g.out_h * g.out_w * g.kh * g.kw * cin * cout > 32768;
#pragma omp parallel for schedule(static) if (parallel)
  for (long tap = 0; tap < taps; ++tap) {
    const std::size_t a = static_cast<std::size_t>(tap) / g.kw, bb = static_cast<std::size_t>(tap) % g.kw;
    double* dk = dkp + static_cast<std::size_t>(tap) * cin * cout;
    for (std::size_t i = 0; i < g.out_h; ++i) {
      const int r = g.rowmap[i * spec.stride_h + a * spec.dilation_h];
      for (std::size_t j = 0; j < g.out_w; ++j) {
        const int c = g.colmap[j * spec.stride_w + bb * spec.dilation_w];
        const double* gy = dyp + (i * g.out_w + j) * cout;
        if (r < 0 || c < 0) {
          const double v = fill_value(spec, r, c);
          if (v == 0.0) continue;
          for (std::size_t ci = 0; ci < cin; ++ci)
            for (std::size_t co = 0; co < cout; ++co) dk[ci * cout + co] += v * gy[co];
          continue;
        }
        const double* xv = xp + (static_cast<std::size_t>(r) * g.w + static_cast<std::size_t>(c)) * cin;
        for (std::size_t ci = 0; ci < cin; ++ci)
          for (std::size_t co = 0; co < cout; ++co) dk[ci * cout + co] += xv[ci] * gy[co];
      }
    }
  }

  // Input gradient: scatter-add through the index maps, so wrapped and
  // reflected borders land back on their source positions.
  double* dxp = out.dx.data();
  const double* kp = k.data();
  for (std::size_t i = 0; i < g.out_h; ++i)
    for (std::size_t j = 0; j < g.out_w; ++j) {
      const double* gy = dyp + (i * g.out_w + j) * cout;
      for (std::size_t a = 0; a < g.kh; ++a) {
        const int r = g.rowmap[i * spec.stride_h + a * spec.dilation_h];
        if (r < 0) continue;
        for (std::size_t bb = 0; bb < g.kw; ++bb) {
          const int c = g.colmap[j * spec.stride_w + bb * spec.dilation_w];
          if (c < 0) continue;
          const double* kk = kp + (a * g.kw + bb) * cin * cout;
          double* dxv = dxp + (static_cast<std::size_t>(r) * g.w + static_cast<std::size_t>(c)) * cin;
          for (std::size_t ci = 0; ci < cin; ++ci) {
            double s = 0.0;
            for (std::size_t co = 0; co < cout; ++co) s += kk[ci * cout + co] * gy[co];
            dxv[ci] += s;
          }
        }
      }
    }
  return out;
}

ConvGrads conv2d_backward_reference(const Tensor& x, const Tensor& k, const ConvSpec& spec, const Tensor& dy) {
  const ConvGeometry g = conv_geometry(x.shape(), k.shape(), spec);
  const PadWidth rw = conv_pad_width(spec.padding.rows, static_cast<int>(g.kh), spec.dilation_h);
  const PadWidth cw = conv_pad_width(spec.padding.cols, static_cast<int>(g.kw), spec.dilation_w);
  const Tensor p = pad_tensor(x, spec.padding, rw, cw);
  Tensor dp(p.shape());
  ConvGrads out{Tensor(x.shape()), Tensor(k.shape()), Tensor(Shape{g.cout})};
  for (std::size_t i = 0; i < g.out_h; ++i)
    for (std::size_t j = 0; j < g.out_w; ++j)
      for (std::size_t co = 0; co < g.cout; ++co) {
        const double gy = dy.at(i, j, co);
        out.db[co] += gy;
        for (std::size_t a = 0; a < g.kh; ++a)
          for (std::size_t bb = 0; bb < g.kw; ++bb)
            for (std::size_t ci = 0; ci < g.cin; ++ci) {
              const std::size_t pi = i * spec.stride_h + a * spec.dilation_h;
              const std::size_t pj = j * spec.stride_w + bb * spec.dilation_w;
              const std::size_t ki = ((a * g.kw + bb) * g.cin + ci) * g.cout + co;
              out.dk[ki] += p.at(pi, pj, ci) * gy;
              dp.at(pi, pj, ci) += k[ki] * gy;
            }
      }
  for (std::size_t i = 0; i < g.rowmap.size(); ++i)
    for (std::size_t j = 0; j < g.colmap.size(); ++j) {
      if (g.rowmap[i] < 0 || g.colmap[j] < 0) continue;
      for (std::size_t ci = 0; ci < g.cin; ++ci)
        out.dx.at(static_cast<std::size_t>(g.rowmap[i]), static_cast<std::size_t>(g.colmap[j]), ci) += dp.at(i, j, ci);
    }
  return out;
}

}  // namespace betlab::nn
