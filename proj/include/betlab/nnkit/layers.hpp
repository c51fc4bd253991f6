#pragma once

#include <string>
#include <vector>

#include "betlab/nnkit/ops.hpp"
#include "betlab/nnkit/recurrent.hpp"
#include "betlab/nnkit/rng.hpp"

namespace betlab::nn {

struct NamedParam {
  std::string name;
  Var var;
};

using ParamList = std::vector<NamedParam>;

class Dense {
 public:
  Dense() = default;
  Dense(std::size_t in, std::size_t out, Activation act, Rng& rng);
  Var operator()(const Var& x) const { return activate(dense(x, w, b), act); }
  void collect(ParamList& out, const std::string& prefix) const;

  Var w, b;
  Activation act = Activation::Linear;
};

class Conv2D {
 public:
  Conv2D() = default;
  Conv2D(std::size_t kh, std::size_t kw, std::size_t cin, std::size_t cout, ConvSpec spec, Activation act, Rng& rng);
  Var operator()(const Var& x) const { return activate(conv2d(x, k, b, spec), act); }
  void collect(ParamList& out, const std::string& prefix) const;
  std::size_t out_channels() const { return k->value.dim(3); }

  Var k, b;
  ConvSpec spec;
  Activation act = Activation::Linear;
};

class Lstm {
 public:
  Lstm() = default;
  // Forget-gate bias starts at 1; recurrent weights uniform in +-1/sqrt(units).
  Lstm(std::size_t in, std::size_t units, bool reverse, Rng& rng);
  Var operator()(const Var& x) const { return lstm(x, wx, wh, b, reverse); }
  void collect(ParamList& out, const std::string& prefix) const;
  std::size_t units() const { return wh->value.dim(0); }

  Var wx, wh, b;
  bool reverse = false;
};

// Forward and reversed passes concatenated along features: (T, 2H).
class BiLstm {
 public:
  BiLstm() = default;
  BiLstm(std::size_t in, std::size_t units, Rng& rng);
  Var operator()(const Var& x) const { return concat_last({fwd(x), bwd(x)}); }
  void collect(ParamList& out, const std::string& prefix) const;

  Lstm fwd, bwd;
};

}  // namespace betlab::nn
