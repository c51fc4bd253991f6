#include "betlab/nnkit/padding.hpp"

#include <array>
#include <string>

#include "betlab/core/error.hpp"

namespace betlab::nn {

namespace {

constexpr std::array<std::string_view, 9> kNames = {"valid", "same",   "reflect", "reflect101", "constant",
                                                    "tile",  "causal", "wrap",    "roll"};

void require_width(bool ok, PadMethod m, int n, int w) {
  if (!ok)
    fail(ErrorCode::PadWiderThanInput, std::string(to_string(m)) + " padding of width " + std::to_string(w) +
                                           " on an input of length " + std::to_string(n));
}

}  // namespace

std::string_view to_string(PadMethod m) { return kNames[static_cast<std::size_t>(m)]; }

PadMethod pad_method_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == s) return static_cast<PadMethod>(i);
  fail(ErrorCode::ParseError, "unknown padding method '" + std::string(s) + "'");
}

PadWidth conv_pad_width(const AxisPad& pad, int kernel, int dilation) {
  if (kernel < 1 || dilation < 1) fail(ErrorCode::InvalidArgument, "kernel and dilation must be positive");
  const int span = dilation * (kernel - 1);
  switch (pad.method) {
    case PadMethod::Valid: return {0, 0};
    case PadMethod::Causal: return {span, 0};
    case PadMethod::Roll:
      if (kernel % 2 == 0) fail(ErrorCode::InvalidArgument, "roll padding needs an odd kernel, got " + std::to_string(kernel));
      return {span / 2, span / 2};
    default: return {span / 2, span - span / 2};
  }
}

PadWidth uniform_width(PadMethod m, int width) {
  switch (m) {
    case PadMethod::Valid: return {0, 0};
    case PadMethod::Causal: return {width, 0};
    default: return {width, width};
  }
}

std::vector<int> pad_index_map(int n, const AxisPad& pad, PadWidth width) {
  if (n < 1) fail(ErrorCode::ShapeMismatch, "cannot pad an empty axis");
  if (width.before < 0 || width.after < 0) fail(ErrorCode::InvalidArgument, "negative pad width");
  const int wb = width.before, wa = width.after;
  const int wmax = std::max(wb, wa);
  std::vector<int> map;
  map.reserve(static_cast<std::size_t>(n + wb + wa));
  auto emit = [&](auto&& before, auto&& after) {
    for (int i = 0; i < wb; ++i) map.push_back(before(wb - i));  // distance from the edge, outermost first
    for (int i = 0; i < n; ++i) map.push_back(i);
    for (int i = 1; i <= wa; ++i) map.push_back(after(i));
  };
  switch (pad.method) {
    case PadMethod::Valid:
    case PadMethod::Same:
    case PadMethod::Causal:
    case PadMethod::Constant:
      emit([](int) { return -1; }, [](int) { return -1; });
      break;
    case PadMethod::Reflect:
      require_width(wmax <= n, pad.method, n, wmax);
      emit([](int d) { return d - 1; }, [n](int d) { return n - d; });
      break;
    case PadMethod::Reflect101:
      require_width(wmax <= n - 1, pad.method, n, wmax);
      emit([](int d) { return d; }, [n](int d) { return n - 1 - d; });
      break;
    case PadMethod::Wrap:
    case PadMethod::Roll:
      require_width(wmax <= n, pad.method, n, wmax);
      emit([n](int d) { return n - d; }, [](int d) { return d - 1; });
      break;
    case PadMethod::Tile: {
      const int t = pad.tile;
      if (t < 1) fail(ErrorCode::InvalidArgument, "tile period must be positive");
      require_width(t <= n, pad.method, n, t);
      // Left block repeats the first t values, right block the last t, both
      // aligned to the input edge.
      emit([t, wb](int d) { return (wb - d) % t; }, [n, t](int d) { return n - t + (d - 1) % t; });
      break;
    }
  }
  return map;
}

Tensor pad_tensor(const Tensor& x, const PaddingSpec& spec, PadWidth rows, PadWidth cols) {
  if (x.rank() != 3) fail(ErrorCode::ShapeMismatch, "pad_tensor expects (H, W, C), got " + shape_str(x.shape()));
  const int h = static_cast<int>(x.dim(0)), w = static_cast<int>(x.dim(1));
  const std::size_t c = x.dim(2);
  const auto rmap = pad_index_map(h, spec.rows, rows);
  const auto cmap = pad_index_map(w, spec.cols, cols);
  Tensor out(Shape{rmap.size(), cmap.size(), c});
  for (std::size_t i = 0; i < rmap.size(); ++i)
    for (std::size_t j = 0; j < cmap.size(); ++j)
      for (std::size_t k = 0; k < c; ++k) {
        double v;
        if (rmap[i] < 0)
          v = spec.rows.value;
        else if (cmap[j] < 0)
          v = spec.cols.value;
        else
          v = x.at(static_cast<std::size_t>(rmap[i]), static_cast<std::size_t>(cmap[j]), k);
        out.at(i, j, k) = v;
      }
  return out;
}

}  // namespace betlab::nn
