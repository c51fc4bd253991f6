#include "betlab/nnkit/attention.hpp"

#include "betlab/core/error.hpp"

namespace betlab::nn {

Var soft_attention(const Var& h, const Var& alpha) {
  if (h->value.shape() != alpha->value.shape())
    fail(ErrorCode::ShapeMismatch,
         "attention weights " + shape_str(alpha->value.shape()) + " do not match " + shape_str(h->value.shape()));
  return mul(h, alpha);
}

ConvAttention1D::ConvAttention1D(std::size_t count, const ConvHeadSpec& s, Rng& rng) : spec(s) {
  if (spec.reduce == HeadReduce::SingleChannel && spec.final_channels != 1)
    fail(ErrorCode::HeadOutputNotSingleChannel,
         "attention head ends with " + std::to_string(spec.final_channels) + " channels");
  ConvSpec cs;
  cs.padding = {{spec.padding}, {PadMethod::Valid}};
  for (std::size_t h = 0; h < count; ++h) {
    std::vector<Conv2D> stack;
    std::size_t cin = 1;
    for (std::size_t c : spec.hidden_channels) {
      stack.emplace_back(spec.kernel, 1, cin, c, cs, spec.hidden_activation, rng);
      cin = c;
    }
    stack.emplace_back(spec.kernel, 1, cin, spec.final_channels, cs, Activation::Linear, rng);
    heads.push_back(std::move(stack));
  }
}

Var ConvAttention1D::alpha(const Var& h) const {
  const Tensor& v = h->value;
  if (v.rank() != 2 || v.dim(1) != heads.size())
    fail(ErrorCode::ShapeMismatch, "attention over " + shape_str(v.shape()) + " with " + std::to_string(heads.size()) + " heads");
  const std::size_t T = v.dim(0);
  std::vector<Var> cols;
  for (std::size_t j = 0; j < heads.size(); ++j) {
    Var z = reshape(slice_last(h, j, 1), Shape{T, 1, 1});
    for (const auto& layer : heads[j]) z = layer(z);
    if (spec.reduce == HeadReduce::AveragePool) z = mean_last(z);
    if (z->value.dim(2) != 1)
      fail(ErrorCode::HeadOutputNotSingleChannel, "attention head produced " + std::to_string(z->value.dim(2)) + " channels");
    if (z->value.dim(0) != T) fail(ErrorCode::ShapeMismatch, "attention head changed the sequence length");
    cols.push_back(softmax(reshape(z, Shape{T, 1}), 0));
  }
  return concat_last(cols);
}

void ConvAttention1D::collect(ParamList& out, const std::string& prefix) const {
  for (std::size_t h = 0; h < heads.size(); ++h)
    for (std::size_t l = 0; l < heads[h].size(); ++l)
      heads[h][l].collect(out, prefix + ".head" + std::to_string(h) + ".conv" + std::to_string(l));
}

DenseAttention::DenseAttention(std::size_t timesteps, Rng& rng) : layer(timesteps, timesteps, Activation::Linear, rng) {}

Var DenseAttention::alpha(const Var& h) const { return transpose(softmax(layer(transpose(h)), 1)); }

void DenseAttention::collect(ParamList& out, const std::string& prefix) const { layer.collect(out, prefix + ".dense"); }

ConvAttention2D::ConvAttention2D(std::size_t variables, const ConvHead2DSpec& s, Rng& rng) : spec(s) {
  ConvSpec cs;
  cs.padding = {{spec.roll_segments ? PadMethod::Roll : PadMethod::Same}, {spec.time_padding}};
  for (std::size_t v = 0; v < variables; ++v) {
    std::vector<Conv2D> stack;
    std::size_t cin = 1;
    for (std::size_t c : spec.hidden_channels) {
      stack.emplace_back(spec.kernel_h, spec.kernel_w, cin, c, cs, spec.hidden_activation, rng);
      cin = c;
    }
    stack.emplace_back(spec.kernel_h, spec.kernel_w, cin, 1, cs, Activation::Linear, rng);
    heads.push_back(std::move(stack));
  }
}

Var ConvAttention2D::alpha(const Var& h) const {
  const Tensor& v = h->value;
  if (v.rank() != 3 || v.dim(2) != heads.size())
    fail(ErrorCode::ShapeMismatch, "2D attention over " + shape_str(v.shape()) + " with " + std::to_string(heads.size()) + " heads");
  std::vector<Var> maps;
  for (std::size_t j = 0; j < heads.size(); ++j) {
    Var z = slice_last(h, j, 1);
    for (const auto& layer : heads[j]) z = layer(z);
    if (z->value.shape() != Shape{v.dim(0), v.dim(1), 1})
      fail(ErrorCode::ShapeMismatch, "2D attention head changed the map extent");
    maps.push_back(softmax_all(z));
  }
  return concat_last(maps);
}

void ConvAttention2D::collect(ParamList& out, const std::string& prefix) const {
  for (std::size_t h = 0; h < heads.size(); ++h)
    for (std::size_t l = 0; l < heads[h].size(); ++l)
      heads[h][l].collect(out, prefix + ".head" + std::to_string(h) + ".conv" + std::to_string(l));
}

}  // namespace betlab::nn
