#include "betlab/nnkit/ops.hpp"

#include <array>
#include <cmath>
#include <string>

#include "betlab/core/error.hpp"

namespace betlab::nn {

namespace {

void same_shape(const Var& a, const Var& b, const char* op) {
  if (a->value.shape() != b->value.shape())
    fail(ErrorCode::ShapeMismatch,
         std::string(op) + ": " + shape_str(a->value.shape()) + " vs " + shape_str(b->value.shape()));
}

void accumulate(const Var& target, const Tensor& g) {
  if (!target->requires_grad) return;
  Tensor& t = target->ensure_grad();
  for (std::size_t i = 0; i < g.size(); ++i) t[i] += g[i];
}

template <typename F, typename D>
Var unary(const Var& x, const char* name, F f, D dfdy) {
  Tensor y(x->value.shape());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = f(x->value[i]);
  return make_node(std::move(y), {x}, name, [dfdy](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * dfdy(self.value[i], in->value[i]);
  });
}

// Outer/inner extents around an axis for strided loops.
struct AxisSplit {
  std::size_t outer = 1, n = 1, inner = 1;
};

AxisSplit split_axis(const Shape& s, std::size_t axis) {
  if (axis >= s.size()) fail(ErrorCode::ShapeMismatch, "axis " + std::to_string(axis) + " out of range for " + shape_str(s));
  AxisSplit a;
  for (std::size_t i = 0; i < axis; ++i) a.outer *= s[i];
  a.n = s[axis];
  for (std::size_t i = axis + 1; i < s.size(); ++i) a.inner *= s[i];
  return a;
}

constexpr std::array<std::string_view, 4> kActivations = {"linear", "relu", "tanh", "sigmoid"};

}  // namespace

std::string_view to_string(Activation a) { return kActivations[static_cast<std::size_t>(a)]; }

Activation activation_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kActivations.size(); ++i)
    if (kActivations[i] == s) return static_cast<Activation>(i);
  fail(ErrorCode::ParseError, "unknown activation '" + std::string(s) + "'");
}

Var add(const Var& a, const Var& b) {
  same_shape(a, b, "add");
  Tensor y = a->value;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += b->value[i];
  return make_node(std::move(y), {a, b}, "add", [](Node& self) {
    accumulate(self.inputs[0], self.grad);
    accumulate(self.inputs[1], self.grad);
  });
}

Var sub(const Var& a, const Var& b) {
  same_shape(a, b, "sub");
  Tensor y = a->value;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= b->value[i];
  return make_node(std::move(y), {a, b}, "sub", [](Node& self) {
    accumulate(self.inputs[0], self.grad);
    if (self.inputs[1]->requires_grad) {
      Tensor& g = self.inputs[1]->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= self.grad[i];
    }
  });
}

Var mul(const Var& a, const Var& b) {
  same_shape(a, b, "mul");
  Tensor y = a->value;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= b->value[i];
  return make_node(std::move(y), {a, b}, "mul", [](Node& self) {
    const Var& x = self.inputs[0];
    const Var& z = self.inputs[1];
    if (x->requires_grad) {
      Tensor& g = x->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * z->value[i];
    }
    if (z->requires_grad) {
      Tensor& g = z->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * x->value[i];
    }
  });
}

Var scale(const Var& a, double s) {
  return unary(a, "scale", [s](double v) { return v * s; }, [s](double, double) { return s; });
}

Var tanh(const Var& x) {
  return unary(x, "tanh", [](double v) { return std::tanh(v); }, [](double y, double) { return 1.0 - y * y; });
}

Var sigmoid(const Var& x) {
  return unary(x, "sigmoid", [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
               [](double y, double) { return y * (1.0 - y); });
}

Var relu(const Var& x) {
  return unary(x, "relu", [](double v) { return v > 0.0 ? v : 0.0; },
               [](double, double v) { return v > 0.0 ? 1.0 : 0.0; });
}

Var activate(const Var& x, Activation a) {
  switch (a) {
    case Activation::Linear: return x;
    case Activation::Relu: return relu(x);
    case Activation::Tanh: return tanh(x);
    case Activation::Sigmoid: return sigmoid(x);
  }
  return x;
}

Var dense(const Var& x, const Var& w, const Var& b) {
  const Shape& xs = x->value.shape();
  const Shape& ws = w->value.shape();
  if (ws.size() != 2 || xs.empty() || xs.back() != ws[0])
    fail(ErrorCode::ShapeMismatch, "dense: input " + shape_str(xs) + " with weights " + shape_str(ws));
  if (b->value.shape() != Shape{ws[1]}) fail(ErrorCode::ShapeMismatch, "dense: bias " + shape_str(b->value.shape()));
  const std::size_t in = ws[0], out = ws[1], rows = x->value.size() / in;
  Shape ys = xs;
  ys.back() = out;
  Tensor y(ys);
  const double* xp = x->value.data();
  const double* wp = w->value.data();
  for (std::size_t r = 0; r < rows; ++r) {
    double* yr = y.data() + r * out;
    for (std::size_t o = 0; o < out; ++o) yr[o] = b->value[o];
    for (std::size_t i = 0; i < in; ++i) {
      const double v = xp[r * in + i];
      const double* wr = wp + i * out;
      for (std::size_t o = 0; o < out; ++o) yr[o] += v * wr[o];
    }
  }
  return make_node(std::move(y), {x, w, b}, "dense", [in, out, rows](Node& self) {
    const Var& xv = self.inputs[0];
    const Var& wv = self.inputs[1];
    const Var& bv = self.inputs[2];
    const double* g = self.grad.data();
    if (bv->requires_grad) {
      Tensor& gb = bv->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t o = 0; o < out; ++o) gb[o] += g[r * out + o];
    }
    if (wv->requires_grad) {
      Tensor& gw = wv->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 0; i < in; ++i) {
          const double v = xv->value[r * in + i];
          for (std::size_t o = 0; o < out; ++o) gw[i * out + o] += v * g[r * out + o];
        }
    }
    if (xv->requires_grad) {
      Tensor& gx = xv->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 0; i < in; ++i) {
          double s = 0.0;
          for (std::size_t o = 0; o < out; ++o) s += wv->value[i * out + o] * g[r * out + o];
          gx[r * in + i] += s;
        }
    }
  });
}

Var conv2d(const Var& x, const Var& k, const Var& b, const ConvSpec& spec) {
  Tensor y = conv2d_forward(x->value, k->value, b->value, spec);
  return make_node(std::move(y), {x, k, b}, "conv2d", [spec](Node& self) {
    const ConvGrads g = conv2d_backward(self.inputs[0]->value, self.inputs[1]->value, spec, self.grad);
    accumulate(self.inputs[0], g.dx);
    accumulate(self.inputs[1], g.dk);
    accumulate(self.inputs[2], g.db);
  });
}

Var pad(const Var& x, const PaddingSpec& spec, PadWidth rows, PadWidth cols) {
  Tensor y = pad_tensor(x->value, spec, rows, cols);
  const auto rmap = pad_index_map(static_cast<int>(x->value.dim(0)), spec.rows, rows);
  const auto cmap = pad_index_map(static_cast<int>(x->value.dim(1)), spec.cols, cols);
  return make_node(std::move(y), {x}, "pad", [rmap, cmap](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    const std::size_t c = in->value.dim(2);
    for (std::size_t i = 0; i < rmap.size(); ++i)
      for (std::size_t j = 0; j < cmap.size(); ++j) {
        if (rmap[i] < 0 || cmap[j] < 0) continue;
        for (std::size_t k = 0; k < c; ++k)
          g.at(static_cast<std::size_t>(rmap[i]), static_cast<std::size_t>(cmap[j]), k) += self.grad.at(i, j, k);
      }
  });
}

Var softmax(const Var& x, std::size_t axis) {
  const AxisSplit s = split_axis(x->value.shape(), axis);
  Tensor y(x->value.shape());
  for (std::size_t o = 0; o < s.outer; ++o)
    for (std::size_t in = 0; in < s.inner; ++in) {
      const std::size_t base = o * s.n * s.inner + in;
      double mx = x->value[base];
      for (std::size_t k = 1; k < s.n; ++k) mx = std::max(mx, x->value[base + k * s.inner]);
      double total = 0.0;
      for (std::size_t k = 0; k < s.n; ++k) {
        const double e = std::exp(x->value[base + k * s.inner] - mx);
        y[base + k * s.inner] = e;
        total += e;
      }
      for (std::size_t k = 0; k < s.n; ++k) y[base + k * s.inner] /= total;
    }
  return make_node(std::move(y), {x}, "softmax", [s](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t o = 0; o < s.outer; ++o)
      for (std::size_t i = 0; i < s.inner; ++i) {
        const std::size_t base = o * s.n * s.inner + i;
        double dot = 0.0;
        for (std::size_t k = 0; k < s.n; ++k) dot += self.grad[base + k * s.inner] * self.value[base + k * s.inner];
        for (std::size_t k = 0; k < s.n; ++k) {
          const std::size_t p = base + k * s.inner;
          g[p] += self.value[p] * (self.grad[p] - dot);
        }
      }
  });
}

Var softmax_all(const Var& x) {
  const Shape shape = x->value.shape();
  return reshape(softmax(reshape(x, Shape{x->value.size()}), 0), shape);
}

Var softmax_cross_entropy(const Var& logits, int label) {
  const Tensor& z = logits->value;
  if (z.rank() != 1) fail(ErrorCode::ShapeMismatch, "cross entropy expects rank-1 logits, got " + shape_str(z.shape()));
  if (label < 0 || static_cast<std::size_t>(label) >= z.size())
    fail(ErrorCode::InvalidArgument, "label " + std::to_string(label) + " outside " + std::to_string(z.size()) + " classes");
  double mx = z[0];
  for (std::size_t i = 1; i < z.size(); ++i) mx = std::max(mx, z[i]);
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) total += std::exp(z[i] - mx);
  const double lse = mx + std::log(total);
  const auto lab = static_cast<std::size_t>(label);
  return make_node(Tensor::scalar(lse - z[lab]), {logits}, "softmax_cross_entropy", [lse, lab](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double p = std::exp(in->value[i] - lse);
      g[i] += self.grad[0] * (p - (i == lab ? 1.0 : 0.0));
    }
  });
}

Var reshape(const Var& x, Shape shape) {
  Tensor y = x->value.reshaped(std::move(shape));
  return make_node(std::move(y), {x}, "reshape", [](Node& self) { accumulate(self.inputs[0], self.grad); });
}

Var concat_last(const std::vector<Var>& parts) {
  if (parts.empty()) fail(ErrorCode::ShapeMismatch, "concat of nothing");
  Shape lead = parts[0]->value.shape();
  lead.pop_back();
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const auto& p : parts) {
    Shape s = p->value.shape();
    const std::size_t w = s.back();
    s.pop_back();
    if (s != lead) fail(ErrorCode::ShapeMismatch, "concat: leading shapes differ");
    widths.push_back(w);
    total += w;
  }
  const std::size_t rows = shape_size(lead);
  Shape ys = lead;
  ys.push_back(total);
  Tensor y(ys);
  std::size_t off = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < widths[p]; ++c) y[r * total + off + c] = parts[p]->value[r * widths[p] + c];
    off += widths[p];
  }
  return make_node(std::move(y), parts, "concat", [widths, rows, total](Node& self) {
    std::size_t off = 0;
    for (std::size_t p = 0; p < self.inputs.size(); ++p) {
      const Var& in = self.inputs[p];
      if (in->requires_grad) {
        Tensor& g = in->ensure_grad();
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < widths[p]; ++c) g[r * widths[p] + c] += self.grad[r * total + off + c];
      }
      off += widths[p];
    }
  });
}

Var slice_last(const Var& x, std::size_t begin, std::size_t count) {
  const Shape& xs = x->value.shape();
  const std::size_t width = xs.back();
  if (count == 0 || begin + count > width) fail(ErrorCode::ShapeMismatch, "slice outside last axis of " + shape_str(xs));
  const std::size_t rows = x->value.size() / width;
  Shape ys = xs;
  ys.back() = count;
  Tensor y(ys);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < count; ++c) y[r * count + c] = x->value[r * width + begin + c];
  return make_node(std::move(y), {x}, "slice", [rows, width, begin, count](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < count; ++c) g[r * width + begin + c] += self.grad[r * count + c];
  });
}

Var transpose(const Var& x) {
  const Tensor& v = x->value;
  if (v.rank() != 2) fail(ErrorCode::ShapeMismatch, "transpose expects rank 2, got " + shape_str(v.shape()));
  const std::size_t n = v.dim(0), m = v.dim(1);
  Tensor y(Shape{m, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) y.at(j, i) = v.at(i, j);
  return make_node(std::move(y), {x}, "transpose", [n, m](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) g.at(i, j) += self.grad.at(j, i);
  });
}

Var row(const Var& x, std::size_t t) {
  const Tensor& v = x->value;
  if (v.rank() != 2 || t >= v.dim(0)) fail(ErrorCode::ShapeMismatch, "row " + std::to_string(t) + " of " + shape_str(v.shape()));
  const std::size_t m = v.dim(1);
  Tensor y(Shape{m});
  for (std::size_t j = 0; j < m; ++j) y[j] = v.at(t, j);
  return make_node(std::move(y), {x}, "row", [t, m](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t j = 0; j < m; ++j) g.at(t, j) += self.grad[j];
  });
}

Var sum_rows(const Var& x) {
  const Tensor& v = x->value;
  if (v.rank() != 2) fail(ErrorCode::ShapeMismatch, "sum_rows expects rank 2, got " + shape_str(v.shape()));
  const std::size_t n = v.dim(0), m = v.dim(1);
  Tensor y(Shape{m});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) y[j] += v.at(i, j);
  return make_node(std::move(y), {x}, "sum_rows", [n, m](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) g.at(i, j) += self.grad[j];
  });
}

Var global_average_pool(const Var& x) {
  const Tensor& v = x->value;
  if (v.rank() != 3) fail(ErrorCode::ShapeMismatch, "global_average_pool expects (H, W, C), got " + shape_str(v.shape()));
  const std::size_t cells = v.dim(0) * v.dim(1), c = v.dim(2);
  Tensor y(Shape{c});
  for (std::size_t p = 0; p < cells; ++p)
    for (std::size_t k = 0; k < c; ++k) y[k] += v[p * c + k];
  for (std::size_t k = 0; k < c; ++k) y[k] /= static_cast<double>(cells);
  return make_node(std::move(y), {x}, "global_average_pool", [cells, c](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t p = 0; p < cells; ++p)
      for (std::size_t k = 0; k < c; ++k) g[p * c + k] += self.grad[k] / static_cast<double>(cells);
  });
}

Var mean_last(const Var& x) {
  const Shape& xs = x->value.shape();
  const std::size_t width = xs.back(), rows = x->value.size() / width;
  Shape ys = xs;
  ys.back() = 1;
  Tensor y(ys);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < width; ++c) s += x->value[r * width + c];
    y[r] = s / static_cast<double>(width);
  }
  return make_node(std::move(y), {x}, "mean_last", [rows, width](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < width; ++c) g[r * width + c] += self.grad[r] / static_cast<double>(width);
  });
}

Var weighted_sum(const Var& x, const Tensor& w) {
  if (w.shape() != x->value.shape())
    fail(ErrorCode::ShapeMismatch, "weighted_sum: " + shape_str(x->value.shape()) + " vs " + shape_str(w.shape()));
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += x->value[i] * w[i];
  return make_node(Tensor::scalar(s), {x}, "weighted_sum", [w](Node& self) {
    const Var& in = self.inputs[0];
    if (!in->requires_grad) return;
    Tensor& g = in->ensure_grad();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[0] * w[i];
  });
}

}  // namespace betlab::nn
