#include "betlab/nnkit/wavenet.hpp"

#include "betlab/core/error.hpp"

namespace betlab::nn {

namespace {

ConvSpec block_spec(int dilation, bool roll) {
  ConvSpec s;
  s.dilation_h = dilation;
  s.padding = {{PadMethod::Causal}, {roll ? PadMethod::Roll : PadMethod::Same}};
  return s;
}

}  // namespace

WaveNetBlock::WaveNetBlock(std::size_t channels, std::size_t k, std::size_t kw, int dilation, bool roll, Rng& rng)
    : filter(k, kw, channels, channels, block_spec(dilation, roll), Activation::Tanh, rng),
      gate(k, kw, channels, channels, block_spec(dilation, roll), Activation::Sigmoid, rng),
      pool(1, 1, channels, channels, ConvSpec{}, Activation::Linear, rng) {}

WaveNetBlock::Output WaveNetBlock::operator()(const Var& x) const {
  const Var z = mul(filter(x), gate(x));
  const Var p = pool(z);
  return {add(x, p), p};
}

void WaveNetBlock::collect(ParamList& out, const std::string& prefix) const {
  filter.collect(out, prefix + ".filter");
  gate.collect(out, prefix + ".gate");
  pool.collect(out, prefix + ".pool");
}

std::size_t wavenet_receptive_field(std::size_t k, std::size_t depth) {
  std::size_t rf = 1, pow = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    pow *= k;
    rf += pow * (k - 1);
  }
  return rf;
}

WaveNet2D::WaveNet2D(const WaveNetConfig& c, Rng& rng) : config(c) {
  if (c.kw % 2 == 0) fail(ErrorCode::InvalidArgument, "variables kernel must be odd for roll padding");
  if (c.k < 1 || c.depth < 1 || c.post_stride < 1) fail(ErrorCode::InvalidArgument, "wavenet sizes must be positive");
  const PadMethod cols = c.roll ? PadMethod::Roll : PadMethod::Same;
  ConvSpec stem_spec;
  stem_spec.padding = {{PadMethod::Valid}, {cols}};
  stem = Conv2D(1, c.kw, 1, c.channels, stem_spec, Activation::Linear, rng);
  std::size_t dilation = 1;
  for (std::size_t n = 1; n <= c.depth; ++n) {
    dilation *= c.k;
    blocks.emplace_back(c.channels, c.k, c.kw, static_cast<int>(dilation), c.roll, rng);
  }
  ConvSpec post_spec;
  post_spec.stride_h = static_cast<int>(c.post_stride);
  post_spec.padding = {{PadMethod::Causal}, {cols}};
  post.emplace_back(c.post_kernel, c.kw, c.channels, c.post_channels, post_spec, Activation::Relu, rng);
  post.emplace_back(c.post_kernel, c.kw, c.post_channels, c.post_channels, post_spec, Activation::Relu, rng);
  post.emplace_back(c.post_kernel, c.kw, c.post_channels, c.classes, post_spec, Activation::Linear, rng);
}

Var WaveNet2D::skips(const Var& x) const {
  const Tensor& v = x->value;
  if (v.rank() != 2 || v.dim(1) != config.variables)
    fail(ErrorCode::ShapeMismatch, "wavenet input " + shape_str(v.shape()));
  Var h = stem(reshape(x, Shape{v.dim(0), v.dim(1), 1}));
  Var total;
  for (const auto& block : blocks) {
    auto out = block(h);
    h = out.residual;
    total = total ? add(total, out.skip) : out.skip;
  }
  return total;
}

Var WaveNet2D::features(const Var& x) const {
  Var h = relu(skips(x));
  for (const auto& layer : post) h = layer(h);
  return h;
}

void WaveNet2D::collect(ParamList& out, const std::string& prefix) const {
  stem.collect(out, prefix + ".stem");
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i].collect(out, prefix + ".block" + std::to_string(i));
  for (std::size_t i = 0; i < post.size(); ++i) post[i].collect(out, prefix + ".post" + std::to_string(i));
}

}  // namespace betlab::nn
