#include "betlab/nnkit/layers.hpp"

#include <cmath>

namespace betlab::nn {

Dense::Dense(std::size_t in, std::size_t out, Activation a, Rng& rng)
    : w(parameter(glorot_uniform(Shape{in, out}, in, out, rng))), b(parameter(Tensor(Shape{out}))), act(a) {}

void Dense::collect(ParamList& out, const std::string& prefix) const {
  out.push_back({prefix + ".w", w});
  out.push_back({prefix + ".b", b});
}

Conv2D::Conv2D(std::size_t kh, std::size_t kw, std::size_t cin, std::size_t cout, ConvSpec s, Activation a, Rng& rng)
    : k(parameter(glorot_uniform(Shape{kh, kw, cin, cout}, kh * kw * cin, kh * kw * cout, rng))),
      b(parameter(Tensor(Shape{cout}))),
      spec(s),
      act(a) {}

void Conv2D::collect(ParamList& out, const std::string& prefix) const {
  out.push_back({prefix + ".k", k});
  out.push_back({prefix + ".b", b});
}

Lstm::Lstm(std::size_t in, std::size_t units, bool rev, Rng& rng)
    : wx(parameter(glorot_uniform(Shape{in, 4 * units}, in, 4 * units, rng))),
      wh(parameter(uniform_tensor(Shape{units, 4 * units}, -1.0 / std::sqrt(static_cast<double>(units)),
                                  1.0 / std::sqrt(static_cast<double>(units)), rng))),
      b(parameter(Tensor(Shape{4 * units}))),
      reverse(rev) {
  for (std::size_t k = units; k < 2 * units; ++k) b->value[k] = 1.0;
}

void Lstm::collect(ParamList& out, const std::string& prefix) const {
  out.push_back({prefix + ".wx", wx});
  out.push_back({prefix + ".wh", wh});
  out.push_back({prefix + ".b", b});
}

BiLstm::BiLstm(std::size_t in, std::size_t units, Rng& rng) : fwd(in, units, false, rng), bwd(in, units, true, rng) {}

void BiLstm::collect(ParamList& out, const std::string& prefix) const {
  fwd.collect(out, prefix + ".fwd");
  bwd.collect(out, prefix + ".bwd");
}

}  // namespace betlab::nn
