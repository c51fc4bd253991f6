#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "betlab/nnkit/tensor.hpp"

namespace betlab::nn {

enum class PadMethod { Valid, Same, Reflect, Reflect101, Constant, Tile, Causal, Wrap, Roll };

std::string_view to_string(PadMethod m);
PadMethod pad_method_from_string(std::string_view s);

struct AxisPad {
  PadMethod method = PadMethod::Valid;
  double value = 0.0;  // Constant fill
  int tile = 1;        // Tile period

  friend bool operator==(const AxisPad&, const AxisPad&) = default;
};

// Padding of a 2D map: rows are the first spatial axis (time), cols the second.
struct PaddingSpec {
  AxisPad rows;
  AxisPad cols;

  static PaddingSpec valid() { return {}; }
  static PaddingSpec same() { return {{PadMethod::Same}, {PadMethod::Same}}; }
  static PaddingSpec both(AxisPad p) { return {p, p}; }
  // Valid on time, wrap on variables.
  static PaddingSpec roll() { return {{PadMethod::Valid}, {PadMethod::Roll}}; }
  static PaddingSpec causal_roll() { return {{PadMethod::Causal}, {PadMethod::Roll}}; }

  friend bool operator==(const PaddingSpec&, const PaddingSpec&) = default;
};

struct PadWidth {
  int before = 0;
  int after = 0;
  friend bool operator==(const PadWidth&, const PadWidth&) = default;
};

// Widths a convolution needs on one axis. span = dilation * (kernel - 1).
//   Valid: 0 / 0.  Causal: span / 0.  Roll: span/2 each side, odd kernel only.
//   Everything else: floor(span/2) before, the rest after.
PadWidth conv_pad_width(const AxisPad& pad, int kernel, int dilation = 1);

// `width` on both sides, except Causal (before only) and Valid (none).
PadWidth uniform_width(PadMethod m, int width);

// For each padded position, the source index in [0, n) or -1 for the fill value.
// Throws PadWiderThanInput when a data-copying method runs out of input.
std::vector<int> pad_index_map(int n, const AxisPad& pad, PadWidth width);

template <typename T>
std::vector<T> pad_sequence(std::span<const T> input, const AxisPad& pad, PadWidth width, T fill) {
  const auto map = pad_index_map(static_cast<int>(input.size()), pad, width);
  std::vector<T> out;
  out.reserve(map.size());
  for (int src : map) out.push_back(src < 0 ? fill : input[static_cast<std::size_t>(src)]);
  return out;
}

// Pads the two spatial axes of an (H, W, C) tensor.
Tensor pad_tensor(const Tensor& x, const PaddingSpec& spec, PadWidth rows, PadWidth cols);

}  // namespace betlab::nn
