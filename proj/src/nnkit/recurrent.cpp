#include "betlab/nnkit/recurrent.hpp"

#include <cmath>
#include <string>

#include "betlab/core/error.hpp"

namespace betlab::nn {

namespace {

double sig(double v) { return 1.0 / (1.0 + std::exp(-v)); }

struct Dims {
  std::size_t in, units;
};

Dims check(const Tensor& wx, const Tensor& wh, const Tensor& b) {
  if (wx.rank() != 2 || wh.rank() != 2 || b.rank() != 1)
    fail(ErrorCode::ShapeMismatch, "lstm weights must be (in, 4H), (H, 4H), (4H)");
  const std::size_t units = wh.dim(0);
  if (wh.dim(1) != 4 * units || wx.dim(1) != 4 * units || b.dim(0) != 4 * units)
    fail(ErrorCode::ShapeMismatch, "lstm weights " + shape_str(wx.shape()) + " " + shape_str(wh.shape()) + " " +
                                       shape_str(b.shape()) + " disagree on the unit count");
  return {wx.dim(0), units};
}

// z = b + x wx + h wh, then activations in place.
void gates_into(const double* x, const double* h, const Tensor& wx, const Tensor& wh, const Tensor& b, Dims d,
                double* z) {
  const std::size_t n = 4 * d.units;
  for (std::size_t k = 0; k < n; ++k) z[k] = b[k];
  for (std::size_t i = 0; i < d.in; ++i) {
    const double v = x[i];
    const double* w = wx.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) z[k] += v * w[k];
  }
  for (std::size_t j = 0; j < d.units; ++j) {
    const double v = h[j];
    const double* w = wh.data() + j * n;
    for (std::size_t k = 0; k < n; ++k) z[k] += v * w[k];
  }
  const std::size_t H = d.units;
  for (std::size_t k = 0; k < H; ++k) {
    z[k] = sig(z[k]);
    z[H + k] = sig(z[H + k]);
    z[2 * H + k] = std::tanh(z[2 * H + k]);
    z[3 * H + k] = sig(z[3 * H + k]);
  }
}

}  // namespace

LstmStep lstm_cell_step(const Tensor& x, const Tensor& h, const Tensor& c, const Tensor& wx, const Tensor& wh,
                        const Tensor& b) {
  const Dims d = check(wx, wh, b);
  if (x.size() != d.in || h.size() != d.units || c.size() != d.units)
    fail(ErrorCode::ShapeMismatch, "lstm step state does not match weights");
  LstmStep s{Tensor(Shape{d.units}), Tensor(Shape{d.units}), Tensor(Shape{4 * d.units})};
  gates_into(x.data(), h.data(), wx, wh, b, d, s.gates.data());
  const std::size_t H = d.units;
  for (std::size_t k = 0; k < H; ++k) {
    s.c[k] = s.gates[H + k] * c[k] + s.gates[k] * s.gates[2 * H + k];
    s.h[k] = s.gates[3 * H + k] * std::tanh(s.c[k]);
  }
  return s;
}

Var lstm(const Var& x, const Var& wx, const Var& wh, const Var& b, bool reverse) {
  const Dims d = check(wx->value, wh->value, b->value);
  const Tensor& xv = x->value;
  if (xv.rank() != 2 || xv.dim(1) != d.in)
    fail(ErrorCode::ShapeMismatch, "lstm input " + shape_str(xv.shape()) + " for " + std::to_string(d.in) + " features");
  const std::size_t T = xv.dim(0), H = d.units;
  Tensor hs(Shape{T, H});
  Tensor cs(Shape{T, H});
  Tensor gates(Shape{T, 4 * H});
  const std::vector<double> zero(H, 0.0);
  for (std::size_t s = 0; s < T; ++s) {
    const std::size_t t = reverse ? T - 1 - s : s;
    const double* hp = s == 0 ? zero.data() : hs.data() + (reverse ? t + 1 : t - 1) * H;
    const double* cp = s == 0 ? zero.data() : cs.data() + (reverse ? t + 1 : t - 1) * H;
    double* z = gates.data() + t * 4 * H;
    gates_into(xv.data() + t * d.in, hp, wx->value, wh->value, b->value, d, z);
    for (std::size_t k = 0; k < H; ++k) {
      const double c = z[H + k] * cp[k] + z[k] * z[2 * H + k];
      cs.at(t, k) = c;
      hs.at(t, k) = z[3 * H + k] * std::tanh(c);
    }
  }
  return make_node(hs, {x, wx, wh, b}, reverse ? "lstm_reverse" : "lstm",
                   [cs, gates, d, T, reverse](Node& self) {
                     const std::size_t H = d.units, G = 4 * H;
                     const Var& xn = self.inputs[0];
                     const Tensor& wxv = self.inputs[1]->value;
                     const Tensor& whv = self.inputs[2]->value;
                     Tensor dwx(wxv.shape()), dwh(whv.shape()), db(Shape{G});
                     Tensor dx(xn->value.shape());
                     std::vector<double> dh_next(H, 0.0), dc_next(H, 0.0), dz(G);
                     const std::vector<double> zero(H, 0.0);
                     for (std::size_t s = T; s-- > 0;) {
                       const std::size_t t = reverse ? T - 1 - s : s;
                       const bool first = s == 0;
                       const std::size_t prev = reverse ? t + 1 : t - 1;
                       const double* hp = first ? zero.data() : self.value.data() + prev * H;
                       const double* cp = first ? zero.data() : cs.data() + prev * H;
                       const double* z = gates.data() + t * G;
                       for (std::size_t k = 0; k < H; ++k) {
                         const double i = z[k], f = z[H + k], g = z[2 * H + k], o = z[3 * H + k];
                         const double tc = std::tanh(cs.at(t, k));
                         const double dh = self.grad.at(t, k) + dh_next[k];
                         const double dc = dh * o * (1.0 - tc * tc) + dc_next[k];
                         dz[k] = dc * g * i * (1.0 - i);
                         dz[H + k] = dc * cp[k] * f * (1.0 - f);
                         dz[2 * H + k] = dc * i * (1.0 - g * g);
                         dz[3 * H + k] = dh * tc * o * (1.0 - o);
                         dc_next[k] = dc * f;
                       }
                       for (std::size_t k = 0; k < G; ++k) db[k] += dz[k];
                       const double* xt = xn->value.data() + t * d.in;
                       for (std::size_t i = 0; i < d.in; ++i) {
                         double s2 = 0.0;
                         for (std::size_t k = 0; k < G; ++k) {
                           dwx[i * G + k] += xt[i] * dz[k];
                           s2 += wxv[i * G + k] * dz[k];
                         }
                         dx.at(t, i) = s2;
                       }
                       for (std::size_t j = 0; j < H; ++j) {
                         double s2 = 0.0;
                         for (std::size_t k = 0; k < G; ++k) {
                           dwh[j * G + k] += hp[j] * dz[k];
                           s2 += whv[j * G + k] * dz[k];
                         }
                         dh_next[j] = s2;
                       }
                     }
                     auto acc = [](const Var& v, const Tensor& g) {
                       if (!v->requires_grad) return;
                       Tensor& t = v->ensure_grad();
                       for (std::size_t i = 0; i < g.size(); ++i) t[i] += g[i];
                     };
                     acc(self.inputs[0], dx);
                     acc(self.inputs[1], dwx);
                     acc(self.inputs[2], dwh);
                     acc(self.inputs[3], db);
                   });
}

}  // namespace betlab::nn
