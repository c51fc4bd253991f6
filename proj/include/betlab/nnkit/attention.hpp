#pragma once

#include <vector>

#include "betlab/nnkit/layers.hpp"

namespace betlab::nn {

// c = alpha * h elementwise; shapes must agree.
Var soft_attention(const Var& h, const Var& alpha);

enum class HeadReduce { SingleChannel, AveragePool };

// One head's 1D convolution stack, run over a single sequence.
struct ConvHeadSpec {
  std::vector<std::size_t> hidden_channels{4};
  std::size_t kernel = 5;
  std::size_t final_channels = 1;  // must be 1 unless reduce is AveragePool
  PadMethod padding = PadMethod::Same;
  Activation hidden_activation = Activation::Tanh;
  HeadReduce reduce = HeadReduce::SingleChannel;

  friend bool operator==(const ConvHeadSpec&, const ConvHeadSpec&) = default;
};

// One head per column of a (T, N) map; each head ends in a softmax over time
// and the heads are concatenated back into alpha (T, N).
class ConvAttention1D {
 public:
  ConvAttention1D() = default;
  ConvAttention1D(std::size_t heads, const ConvHeadSpec& spec, Rng& rng);
  Var alpha(const Var& h) const;
  Var operator()(const Var& h) const { return soft_attention(h, alpha(h)); }
  void collect(ParamList& out, const std::string& prefix) const;

  std::vector<std::vector<Conv2D>> heads;
  ConvHeadSpec spec;
};

// Attention over time from one dense layer shared by every variable: the map
// is transposed so the layer runs along time, then transposed back.
class DenseAttention {
 public:
  DenseAttention() = default;
  DenseAttention(std::size_t timesteps, Rng& rng);
  Var alpha(const Var& h) const;
  Var operator()(const Var& h) const { return soft_attention(h, alpha(h)); }
  void collect(ParamList& out, const std::string& prefix) const;

  Dense layer;
};

struct ConvHead2DSpec {
  std::vector<std::size_t> hidden_channels{4};
  std::size_t kernel_h = 3;  // segments axis
  std::size_t kernel_w = 3;  // time axis
  bool roll_segments = false;            // wrap segments, Same otherwise
  PadMethod time_padding = PadMethod::Same;
  Activation hidden_activation = Activation::Tanh;
};

// Input (S, T, V). One 2D head per variable over its (S, T) map, each map
// normalized by a softmax over all of its cells; alpha is (S, T, V).
class ConvAttention2D {
 public:
  ConvAttention2D() = default;
  ConvAttention2D(std::size_t variables, const ConvHead2DSpec& spec, Rng& rng);
  Var alpha(const Var& h) const;
  Var operator()(const Var& h) const { return soft_attention(h, alpha(h)); }
  void collect(ParamList& out, const std::string& prefix) const;

  std::vector<std::vector<Conv2D>> heads;
  ConvHead2DSpec spec;
};

}  // namespace betlab::nn
