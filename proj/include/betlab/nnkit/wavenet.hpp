#pragma once

#include <vector>

#include "betlab/nnkit/layers.hpp"

namespace betlab::nn {

// Gated residual block: tanh and sigmoid dilated convolutions (causal on
// time, roll or same on variables), their product through a 1x1 channel-wise
// pooling convolution, then added to the input (residual) and handed out as
// the skip contribution.
class WaveNetBlock {
 public:
  struct Output {
    Var residual;
    Var skip;
  };

  WaveNetBlock() = default;
  WaveNetBlock(std::size_t channels, std::size_t k, std::size_t kw, int dilation, bool roll, Rng& rng);
  Output operator()(const Var& x) const;
  void collect(ParamList& out, const std::string& prefix) const;

  Conv2D filter, gate, pool;
};

// Receptive field in time of `depth` blocks with dilation k^N: 1 + sum k^N (k - 1).
std::size_t wavenet_receptive_field(std::size_t k, std::size_t depth);

struct WaveNetConfig {
  std::size_t timesteps = 128;
  std::size_t variables = 9;
  std::size_t k = 2;         // time kernel in the blocks
  std::size_t kw = 3;        // variables kernel, odd
  std::size_t depth = 3;
  std::size_t channels = 8;
  std::size_t post_kernel = 3;
  std::size_t post_stride = 2;
  std::size_t post_channels = 8;
  std::size_t classes = 5;
  bool roll = true;  // roll on variables, Same otherwise

  friend bool operator==(const WaveNetConfig&, const WaveNetConfig&) = default;
};

// Input (T, V): stem (1, kW) convolution, residual blocks N = 1..depth with
// dilation k^N, skip sum, three strided causal convolutions that downsample
// time only, global average pooling to one value per class.
class WaveNet2D {
 public:
  WaveNet2D() = default;
  WaveNet2D(const WaveNetConfig& config, Rng& rng);
  // Sum of block skips, (T, V, channels).
  Var skips(const Var& x) const;
  // Map before pooling, (T', V, classes).
  Var features(const Var& x) const;
  Var logits(const Var& x) const { return global_average_pool(features(x)); }
  void collect(ParamList& out, const std::string& prefix) const;

  WaveNetConfig config;
  Conv2D stem;
  std::vector<WaveNetBlock> blocks;
  std::vector<Conv2D> post;
};

}  // namespace betlab::nn
