#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "betlab/nnkit/attention.hpp"
#include "betlab/nnkit/convlstm.hpp"
#include "betlab/nnkit/models.hpp"
#include "betlab/nnkit/train.hpp"
#include "betlab/nnkit/wavenet.hpp"
#include "support/fixtures.hpp"
#include "support/gradient_suite.hpp"

using namespace betlab;
using namespace betlab::nn;
using betlab::testing::error_code_of;

namespace {

std::string padded(const std::string& in, AxisPad pad, int width, char fill = '0') {
  const auto out = pad_sequence<char>(std::span<const char>(in.data(), in.size()), pad,
                                      uniform_width(pad.method, width), fill);
  return std::string(out.begin(), out.end());
}

Tensor random_tensor(Shape s, Rng& rng) { return uniform_tensor(std::move(s), -1.0, 1.0, rng); }

// Straight loops over the padded positions, written independently of the
// library kernels.
Tensor direct_valid_conv(const Tensor& x, const Tensor& k, const Tensor& b) {
  const std::size_t H = x.dim(0), W = x.dim(1), C = x.dim(2);
  const std::size_t kh = k.dim(0), kw = k.dim(1), co = k.dim(3);
  Tensor y(Shape{H - kh + 1, W - kw + 1, co});
  for (std::size_t i = 0; i + kh <= H; ++i)
    for (std::size_t j = 0; j + kw <= W; ++j)
      for (std::size_t o = 0; o < co; ++o) {
        double s = b[o];
        for (std::size_t a = 0; a < kh; ++a)
          for (std::size_t c = 0; c < kw; ++c)
            for (std::size_t ci = 0; ci < C; ++ci) s += x.at(i + a, j + c, ci) * k[((a * kw + c) * C + ci) * co + o];
        y.at(i, j, o) = s;
      }
  return y;
}

// Columns of x wrapped by w on each side.
Tensor wrap_columns(const Tensor& x, std::size_t w) {
  const std::size_t H = x.dim(0), W = x.dim(1), C = x.dim(2);
  Tensor y(Shape{H, W + 2 * w, C});
  for (std::size_t i = 0; i < H; ++i)
    for (std::size_t j = 0; j < W + 2 * w; ++j)
      for (std::size_t c = 0; c < C; ++c) y.at(i, j, c) = x.at(i, (j + W - w) % W, c);
  return y;
}

}  // namespace

TEST(Padding, OneDimensionalTable) {
  const std::string in = "abcdef";
  EXPECT_EQ(padded(in, {PadMethod::Valid}, 4), "abcdef");
  EXPECT_EQ(padded(in, {PadMethod::Same}, 4), "0000abcdef0000");
  EXPECT_EQ(padded(in, {PadMethod::Reflect}, 4), "dcbaabcdeffedc");
  EXPECT_EQ(padded(in, {PadMethod::Reflect101}, 4), "edcbabcdefedcb");
  EXPECT_EQ(padded(in, {PadMethod::Constant}, 4, 'n'), "nnnnabcdefnnnn");
  EXPECT_EQ(padded(in, {PadMethod::Tile, 0.0, 2}, 4), "abababcdefefef");
  EXPECT_EQ(padded(in, {PadMethod::Causal}, 4), "0000abcdef");
  EXPECT_EQ(padded(in, {PadMethod::Wrap}, 4), "cdefabcdefabcd");
}

TEST(Padding, RollGrid) {
  // Three time steps of six variables, one channel; letters as codes.
  Tensor x(Shape{3, 6, 1});
  const std::string rows[] = {"abcdef", "ghijkl", "mnopqr"};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) x.at(i, j, 0) = rows[i][j];
  const Tensor p = pad_tensor(x, PaddingSpec::roll(), {0, 0}, {4, 4});
  ASSERT_EQ(p.shape(), (Shape{3, 14, 1}));
  const std::string expect[] = {"cdefabcdefabcd", "ijklghijklghij", "opqrmnopqrmnop"};
  for (std::size_t i = 0; i < 3; ++i) {
    std::string got;
    for (std::size_t j = 0; j < 14; ++j) got += static_cast<char>(p.at(i, j, 0));
    EXPECT_EQ(got, expect[i]);
  }
}

TEST(Padding, WidthLimits) {
  const std::string in = "abc";
  EXPECT_EQ(padded(in, {PadMethod::Reflect}, 3), "cbaabccba");
  EXPECT_EQ(error_code_of([&] { padded(in, {PadMethod::Reflect}, 4); }), ErrorCode::PadWiderThanInput);
  EXPECT_EQ(error_code_of([&] { padded(in, {PadMethod::Reflect101}, 3); }), ErrorCode::PadWiderThanInput);
  EXPECT_EQ(error_code_of([&] { padded(in, {PadMethod::Wrap}, 4); }), ErrorCode::PadWiderThanInput);
  EXPECT_EQ(error_code_of([&] { padded(in, {PadMethod::Tile, 0.0, 4}, 2); }), ErrorCode::PadWiderThanInput);
  EXPECT_EQ(padded(in, {PadMethod::Same}, 10).size(), 23u);
}

TEST(Padding, ConvWidths) {
  EXPECT_EQ(conv_pad_width({PadMethod::Same}, 3), (PadWidth{1, 1}));
  EXPECT_EQ(conv_pad_width({PadMethod::Same}, 4), (PadWidth{1, 2}));
  EXPECT_EQ(conv_pad_width({PadMethod::Causal}, 3, 4), (PadWidth{8, 0}));
  EXPECT_EQ(conv_pad_width({PadMethod::Roll}, 5), (PadWidth{2, 2}));
  EXPECT_EQ(conv_pad_width({PadMethod::Valid}, 5), (PadWidth{0, 0}));
  EXPECT_EQ(error_code_of([] { conv_pad_width({PadMethod::Roll}, 4); }), ErrorCode::InvalidArgument);
}

TEST(Conv, IdentityAndOnes) {
  Rng rng(1);
  const Tensor x = random_tensor({5, 4, 2}, rng);
  Tensor k(Shape{1, 1, 2, 2});
  k[0] = 1.0;
  k[3] = 1.0;
  EXPECT_EQ(conv2d_forward(x, k, Tensor(Shape{2}), ConvSpec{}), x);

  const Tensor ones(Shape{5, 6, 1}, 1.0);
  const Tensor y = conv2d_forward(ones, Tensor(Shape{3, 3, 1, 1}, 1.0), Tensor(Shape{1}), ConvSpec{});
  ASSERT_EQ(y.shape(), (Shape{3, 4, 1}));
  for (double v : y.values()) EXPECT_EQ(v, 9.0);
}

TEST(Conv, MatchesDirectLoops) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor x = random_tensor({5, 7, 2}, rng);
    const Tensor k = random_tensor({3, 3, 2, 3}, rng);
    const Tensor b = random_tensor({3}, rng);
    const Tensor y = conv2d_forward(x, k, b, ConvSpec{});
    const Tensor o = direct_valid_conv(x, k, b);
    ASSERT_EQ(y.shape(), o.shape());
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(y[i], o[i], 1e-12);
  }
}

TEST(Conv, KernelMatchesReferenceForEveryPadding) {
  Rng rng(3);
  const PadMethod methods[] = {PadMethod::Valid, PadMethod::Same,   PadMethod::Reflect, PadMethod::Reflect101,
                               PadMethod::Constant, PadMethod::Tile, PadMethod::Causal, PadMethod::Wrap};
  for (PadMethod rows : methods)
    for (PadMethod cols : methods) {
      ConvSpec spec;
      spec.padding = {{rows, 0.5, 2}, {cols, -0.25, 2}};
      spec.stride_h = 1 + static_cast<int>(rng.index(2));
      spec.dilation_w = 1 + static_cast<int>(rng.index(2));
      const Tensor x = random_tensor({9, 8, 2}, rng);
      const Tensor k = random_tensor({3, 3, 2, 2}, rng);
      const Tensor b = random_tensor({2}, rng);
      EXPECT_EQ(conv2d_forward(x, k, b, spec), conv2d_forward_reference(x, k, b, spec));
      const Tensor dy = random_tensor(conv2d_forward(x, k, b, spec).shape(), rng);
      const ConvGrads fast = conv2d_backward(x, k, spec, dy);
      const ConvGrads slow = conv2d_backward_reference(x, k, spec, dy);
      for (std::size_t i = 0; i < fast.dx.size(); ++i) EXPECT_NEAR(fast.dx[i], slow.dx[i], 1e-12);
      for (std::size_t i = 0; i < fast.dk.size(); ++i) EXPECT_NEAR(fast.dk[i], slow.dk[i], 1e-12);
      for (std::size_t i = 0; i < fast.db.size(); ++i) EXPECT_NEAR(fast.db[i], slow.db[i], 1e-12);
    }
}

TEST(Conv, RollEqualsValidOnWrappedInput) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t kw = 2 * rng.index(3) + 1;
    const std::size_t w = kw + rng.index(5);
    const std::size_t h = 3 + rng.index(6), kh = 1 + rng.index(3);
    const Tensor x = random_tensor({h, w, 1 + rng.index(3)}, rng);
    const Tensor k = random_tensor({kh, kw, x.dim(2), 1 + rng.index(3)}, rng);
    const Tensor b = random_tensor({k.dim(3)}, rng);
    ConvSpec roll;
    roll.padding = PaddingSpec::roll();
    EXPECT_EQ(conv2d_forward(x, k, b, roll), conv2d_forward(wrap_columns(x, kw / 2), k, b, ConvSpec{}));
  }
}

TEST(Conv, ExtentLaws) {
  Rng rng(5);
  const Tensor x = random_tensor({12, 9, 1}, rng);
  const Tensor k = random_tensor({3, 5, 1, 2}, rng);
  const Tensor b(Shape{2});
  auto out = [&](PaddingSpec p) {
    ConvSpec s;
    s.padding = p;
    return conv2d_forward(x, k, b, s).shape();
  };
  EXPECT_EQ(out(PaddingSpec::same()), (Shape{12, 9, 2}));
  EXPECT_EQ(out(PaddingSpec::valid()), (Shape{10, 5, 2}));
  EXPECT_EQ(out(PaddingSpec::causal_roll()), (Shape{12, 9, 2}));
  EXPECT_EQ(out(PaddingSpec::roll()), (Shape{10, 9, 2}));
  const Tensor bad = random_tensor({3, 4, 2, 2}, rng);
  EXPECT_EQ(error_code_of([&] { conv2d_forward(x, bad, b, ConvSpec{}); }), ErrorCode::ShapeMismatch);
  const Tensor even = random_tensor({3, 4, 1, 2}, rng);
  ConvSpec roll;
  roll.padding = PaddingSpec::roll();
  EXPECT_EQ(error_code_of([&] { conv2d_forward(x, even, b, roll); }), ErrorCode::InvalidArgument);
}

TEST(Conv, BackwardBasics) {
  Rng rng(6);
  const Tensor x = random_tensor({6, 6, 2}, rng);
  const Tensor k = random_tensor({3, 3, 2, 2}, rng);
  ConvSpec same;
  same.padding = PaddingSpec::same();
  const ConvGrads zero = conv2d_backward(x, k, same, Tensor(Shape{6, 6, 2}));
  for (double v : zero.dx.values()) EXPECT_EQ(v, 0.0);
  for (double v : zero.dk.values()) EXPECT_EQ(v, 0.0);
  for (double v : zero.db.values()) EXPECT_EQ(v, 0.0);

  // Upstream gradient only on interior outputs: Same and Valid agree on dk.
  Tensor dy_same(Shape{6, 6, 2});
  Tensor dy_valid(Shape{4, 4, 2});
  for (std::size_t i = 1; i < 5; ++i)
    for (std::size_t j = 1; j < 5; ++j)
      for (std::size_t c = 0; c < 2; ++c) {
        const double g = rng.uniform(-1, 1);
        dy_same.at(i, j, c) = g;
        dy_valid.at(i - 1, j - 1, c) = g;
      }
  const ConvGrads gs = conv2d_backward(x, k, same, dy_same);
  const ConvGrads gv = conv2d_backward(x, k, ConvSpec{}, dy_valid);
  for (std::size_t i = 0; i < gs.dk.size(); ++i) EXPECT_NEAR(gs.dk[i], gv.dk[i], 1e-12);
}

TEST(Gradients, RollConvFiniteDifferences) {
  Rng rng(7);
  const Var x = parameter(random_tensor({4, 6, 1}, rng));
  const Var k = parameter(random_tensor({3, 3, 1, 1}, rng));
  const Var b = parameter(random_tensor({1}, rng));
  ConvSpec spec;
  spec.padding = PaddingSpec::roll();
  const Tensor w = random_tensor({2, 6, 1}, rng);
  const auto r = check_gradients([&] { return weighted_sum(conv2d(x, k, b, spec), w); }, {x, k, b});
  EXPECT_LT(r.max_relative_error, 1e-4) << r.worst;
}

TEST(Gradients, EveryOpOverRandomShapes) {
  Rng rng(8);
  for (const auto& c : betlab::testing::gradient_cases()) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) worst = std::max(worst, c.run(rng).max_relative_error);
    EXPECT_LT(worst, 1e-4) << c.op;
  }
}

TEST(Softmax, ClosedForms) {
  const Var u = constant(Tensor(Shape{4}, 0.3));
  const Tensor flat = softmax(u, 0)->value;
  for (double v : flat.values()) EXPECT_DOUBLE_EQ(v, 0.25);
  const Var two = constant(Tensor(Shape{2}, {0.0, std::log(3.0)}));
  const Tensor p = softmax(two, 0)->value;
  EXPECT_NEAR(p[0], 0.25, 1e-15);
  EXPECT_NEAR(p[1], 0.75, 1e-15);
  Rng rng(9);
  const Tensor x = random_tensor({3, 5}, rng);
  Tensor shifted = x;
  for (auto& v : shifted.values()) v += 17.0;
  const Tensor a = softmax(constant(x), 1)->value, b = softmax(constant(shifted), 1)->value;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  const Tensor cols = softmax(constant(x), 0)->value;
  for (std::size_t j = 0; j < 5; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += cols.at(i, j);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Attention, ScalingIdentities) {
  Rng rng(10);
  const Var h = constant(random_tensor({6, 3}, rng));
  EXPECT_EQ(soft_attention(h, constant(Tensor(Shape{6, 3}, 1.0)))->value, h->value);
  Tensor onehot(Shape{6, 3});
  for (std::size_t j = 0; j < 3; ++j) onehot.at(2, j) = 1.0;
  const Tensor c = soft_attention(h, constant(onehot))->value;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c.at(i, j), i == 2 ? h->value.at(i, j) : 0.0);
  EXPECT_EQ(error_code_of([&] { soft_attention(h, constant(Tensor(Shape{3, 6}))); }), ErrorCode::ShapeMismatch);
}

TEST(Attention, ConvHeadsNormalizeColumns) {
  Rng rng(11);
  ConvHeadSpec spec;
  spec.hidden_channels = {3, 2};
  const ConvAttention1D att(4, spec, rng);
  for (int trial = 0; trial < 10; ++trial) {
    const Var h = constant(random_tensor({20, 4}, rng));
    const Tensor a = att.alpha(h)->value;
    ASSERT_EQ(a.shape(), (Shape{20, 4}));
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_GE(a.at(i, j), 0.0);
        EXPECT_LE(a.at(i, j), 1.0);
        s += a.at(i, j);
      }
      EXPECT_NEAR(s, 1.0, 1e-9);
    }
    EXPECT_EQ(att(h)->value.shape(), h->value.shape());
  }
}

TEST(Attention, ConstantSeriesGivesUniformWeights) {
  Rng rng(12);
  ConvHeadSpec spec;
  spec.padding = PadMethod::Wrap;
  const ConvAttention1D att(3, spec, rng);
  Tensor x(Shape{16, 3});
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 3; ++j) x.at(i, j) = static_cast<double>(j) - 0.7;
  const Tensor a = att.alpha(constant(x))->value;
  for (double v : a.values()) EXPECT_NEAR(v, 1.0 / 16.0, 1e-12);
}

TEST(Attention, AveragingHeadsMatchHandComposition) {
  Rng rng(13);
  ConvHeadSpec spec;
  spec.hidden_channels = {};
  spec.kernel = 3;
  ConvAttention1D att(2, spec, rng);
  for (auto& head : att.heads) {
    head[0].k->value.fill(1.0 / 3.0);
    head[0].b->value.fill(0.0);
  }
  const Tensor x = random_tensor({8, 2}, rng);
  const Tensor a = att.alpha(constant(x))->value;
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<double> smooth(8);
    for (std::size_t i = 0; i < 8; ++i) {
      double s = 0.0;
      for (int d = -1; d <= 1; ++d) {
        const int t = static_cast<int>(i) + d;
        if (t >= 0 && t < 8) s += x.at(static_cast<std::size_t>(t), j);
      }
      smooth[i] = s / 3.0;
    }
    double total = 0.0;
    for (double v : smooth) total += std::exp(v);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(a.at(i, j), std::exp(smooth[i]) / total, 1e-12);
  }
}

TEST(Attention, HeadMustEndInOneChannel) {
  Rng rng(14);
  ConvHeadSpec spec;
  spec.final_channels = 2;
  EXPECT_EQ(error_code_of([&] { ConvAttention1D(3, spec, rng); }), ErrorCode::HeadOutputNotSingleChannel);
  spec.reduce = HeadReduce::AveragePool;
  const ConvAttention1D pooled(3, spec, rng);
  const Tensor a = pooled.alpha(constant(random_tensor({10, 3}, rng)))->value;
  double s = 0.0;
  for (std::size_t i = 0; i < 10; ++i) s += a.at(i, 1);
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Attention, DenseBeforeNormalizesOverTime) {
  Rng rng(15);
  const DenseAttention att(7, rng);
  const Tensor a = att.alpha(constant(random_tensor({7, 3}, rng)))->value;
  for (std::size_t j = 0; j < 3; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 7; ++i) s += a.at(i, j);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Attention2D, MapsSumToOne) {
  Rng rng(16);
  ConvHead2DSpec spec;
  spec.roll_segments = true;
  const ConvAttention2D att(3, spec, rng);
  const Tensor a = att.alpha(constant(random_tensor({7, 6, 3}, rng)))->value;
  ASSERT_EQ(a.shape(), (Shape{7, 6, 3}));
  for (std::size_t v = 0; v < 3; ++v) {
    double s = 0.0;
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 6; ++j) s += a.at(i, j, v);
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
}

TEST(Attention2D, ConstantInputIsUniform) {
  Rng rng(17);
  ConvHead2DSpec spec;
  spec.roll_segments = true;
  spec.time_padding = PadMethod::Wrap;
  const ConvAttention2D att(2, spec, rng);
  const Tensor a = att.alpha(constant(Tensor(Shape{7, 5, 2}, 0.4)))->value;
  for (double v : a.values()) EXPECT_NEAR(v, 1.0 / 35.0, 1e-12);
}

TEST(Attention2D, RollWrapsFirstAndLastSegment) {
  Rng rng(18);
  ConvHead2DSpec spec;
  spec.hidden_channels = {};
  spec.roll_segments = true;
  const ConvAttention2D att(1, spec, rng);
  const Tensor x = random_tensor({7, 5, 1}, rng);
  // Oracle: wrap segments by hand, Valid on segments, Same on time.
  Tensor wrapped(Shape{9, 5, 1});
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 5; ++j) wrapped.at(i, j, 0) = x.at((i + 6) % 7, j, 0);
  ConvSpec valid_time_same;
  valid_time_same.padding = {{PadMethod::Valid}, {PadMethod::Same}};
  const Tensor z = conv2d_forward(wrapped, att.heads[0][0].k->value, att.heads[0][0].b->value, valid_time_same);
  const Tensor expect = softmax_all(constant(z))->value;
  EXPECT_EQ(att.alpha(constant(x))->value, expect);
}

TEST(Lstm, ZeroInZeroOut) {
  Rng rng(19);
  Lstm cell(3, 4, false, rng);
  cell.b->value.fill(0.0);
  const Tensor y = cell(constant(Tensor(Shape{5, 3})))->value;
  for (double v : y.values()) EXPECT_EQ(v, 0.0);
}

TEST(Lstm, ScalarTrace) {
  // One unit: input weights 0.5, 1, -1, 2; recurrent 0.1 each; biases 0.
  const Tensor wx(Shape{1, 4}, {0.5, 1.0, -1.0, 2.0});
  const Tensor wh(Shape{1, 4}, {0.1, 0.1, 0.1, 0.1});
  const Tensor b(Shape{4});
  const double xs[] = {1.0, -0.5, 2.0};
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  double h = 0.0, c = 0.0;
  std::vector<double> expect;
  for (double x : xs) {
    const double i = sig(0.5 * x + 0.1 * h), f = sig(x + 0.1 * h), g = std::tanh(-x + 0.1 * h), o = sig(2 * x + 0.1 * h);
    c = f * c + i * g;
    h = o * std::tanh(c);
    expect.push_back(h);
  }
  const Tensor y = lstm(constant(Tensor(Shape{3, 1}, {1.0, -0.5, 2.0})), constant(wx), constant(wh), constant(b))->value;
  for (std::size_t t = 0; t < 3; ++t) EXPECT_NEAR(y[t], expect[t], 1e-15);

  LstmStep s = lstm_cell_step(Tensor(Shape{1}, {1.0}), Tensor(Shape{1}), Tensor(Shape{1}), wx, wh, b);
  EXPECT_NEAR(s.h[0], expect[0], 1e-15);
}

TEST(Lstm, ReverseEqualsForwardOnReversedInput) {
  Rng rng(20);
  Lstm fwd(2, 3, false, rng);
  Lstm rev = fwd;
  rev.reverse = true;
  const Tensor x = random_tensor({6, 2}, rng);
  Tensor flipped(x.shape());
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t j = 0; j < 2; ++j) flipped.at(5 - t, j) = x.at(t, j);
  const Tensor a = rev(constant(x))->value;
  const Tensor b = fwd(constant(flipped))->value;
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a.at(t, j), b.at(5 - t, j), 1e-15);
  BiLstm bi(2, 3, rng);
  EXPECT_EQ(bi(constant(x))->value.shape(), (Shape{6, 6}));
}

TEST(ConvLstm, ZeroWeightsGiveZeroMaps) {
  const Var x = constant(Tensor(Shape{3, 5, 4, 1}, 0.7));
  const Var y = convlstm2d(x, constant(Tensor(Shape{3, 3, 1, 8})), constant(Tensor(Shape{3, 3, 2, 8})),
                           constant(Tensor(Shape{8})), true);
  EXPECT_EQ(y->value.shape(), (Shape{5, 4, 2}));
  for (double v : y->value.values()) EXPECT_EQ(v, 0.0);
}

TEST(ConvLstm, OneSegmentIsOneGatedConvolution) {
  Rng rng(21);
  const ConvLstm2D cell(1, 2, 3, 3, true, rng);
  const Tensor x = random_tensor({1, 6, 5, 1}, rng);
  const Tensor y = cell(constant(x))->value;
  ConvSpec spec;
  spec.padding = {{PadMethod::Same}, {PadMethod::Roll}};
  const Tensor z = conv2d_forward(x.reshaped({6, 5, 1}), cell.kx->value, cell.b->value, spec);
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  for (std::size_t p = 0; p < 30; ++p)
    for (std::size_t k = 0; k < 2; ++k) {
      const double i = sig(z[p * 8 + k]), g = std::tanh(z[p * 8 + 4 + k]), o = sig(z[p * 8 + 6 + k]);
      EXPECT_NEAR(y[p * 2 + k], o * std::tanh(i * g), 1e-14);
    }
}

TEST(ConvLstm, ExtentsAndTrainingRefusal) {
  Rng rng(22);
  const ConvLstm2D cell(1, 3, 3, 3, true, rng);
  EXPECT_EQ(cell(constant(random_tensor({7, 24, 9, 1}, rng)))->value.shape(), (Shape{24, 9, 3}));

  ConvLstmClassifierConfig cfg;
  cfg.timesteps = 8;
  cfg.variables = 3;
  cfg.segments = 2;
  ConvLstmClassifier model(cfg);
  Dataset data{{random_tensor({8, 3}, rng)}, {1}};
  EXPECT_EQ(model.probabilities(data.inputs[0]).size(), 5u);
  EXPECT_EQ(error_code_of([&] { train(model, data, TrainConfig{}); }), ErrorCode::GraphContainsForwardOnlyLayer);
  const Var loss = softmax_cross_entropy(model.logits(data.inputs[0]), 1);
  EXPECT_EQ(error_code_of([&] { backward(loss); }), ErrorCode::GraphContainsForwardOnlyLayer);
}

TEST(WaveNet, IdentityBlock) {
  Rng rng(23);
  WaveNetBlock block(2, 2, 3, 2, true, rng);
  block.filter.k->value.fill(0.0);
  block.filter.b->value.fill(0.0);
  block.pool.b->value.fill(0.0);
  const Var x = constant(random_tensor({8, 4, 2}, rng));
  EXPECT_EQ(block(x).residual->value, x->value);
}

TEST(WaveNet, CausalityAndReceptiveField) {
  for (std::size_t k : {2u, 3u})
    for (std::size_t depth = 1; depth <= 4; ++depth) {
      const std::size_t rf = wavenet_receptive_field(k, depth);
      const std::size_t T = rf + 8;
      WaveNetConfig cfg;
      cfg.timesteps = T;
      cfg.variables = 1;
      cfg.kw = 1;
      cfg.k = k;
      cfg.depth = depth;
      cfg.channels = 2;
      Rng rng(100 + k * 10 + depth);
      const WaveNet2D net(cfg, rng);
      const Tensor x = random_tensor({T, 1}, rng);
      const Tensor base = net.skips(constant(x))->value;
      const std::size_t t = T - 1;
      // The oldest input that moves y_t sits exactly rf - 1 steps back.
      std::size_t oldest = T;
      for (std::size_t s = 0; s < T; ++s) {
        Tensor p = x;
        p[s] += 0.5;
        const Tensor y = net.skips(constant(p))->value;
        bool future_clean = true;
        for (std::size_t u = 0; u < s; ++u)
          for (std::size_t c = 0; c < 2; ++c) future_clean = future_clean && y.at(u, 0, c) == base.at(u, 0, c);
        EXPECT_TRUE(future_clean) << "k=" << k << " depth=" << depth << " s=" << s;
        bool changed = false;
        for (std::size_t c = 0; c < 2; ++c) changed = changed || y.at(t, 0, c) != base.at(t, 0, c);
        if (changed && oldest == T) oldest = s;
      }
      EXPECT_EQ(t - oldest + 1, rf) << "k=" << k << " depth=" << depth;
    }
}

TEST(WaveNet, ClassifierOutputs) {
  WaveNetConfig cfg;
  cfg.timesteps = 32;
  cfg.variables = 4;
  WaveNetClassifier model(cfg, 5);
  Rng rng(24);
  const Tensor x = random_tensor({32, 4}, rng);
  const Tensor p = model.probabilities(x);
  ASSERT_EQ(p.size(), 5u);
  double s = 0.0;
  for (double v : p.values()) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    s += v;
  }
  EXPECT_NEAR(s, 1.0, 1e-12);

  // Feature row i sees inputs up to i * 8 (three stride-2 layers).
  const Tensor base = model.net().features(constant(x))->value;
  for (std::size_t t = 0; t < 32; ++t) {
    Tensor q = x;
    q.at(t, 2) += 1.0;
    const Tensor y = model.net().features(constant(q))->value;
    for (std::size_t i = 0; i * 8 < t && i < y.dim(0); ++i)
      for (std::size_t j = 0; j < y.dim(1); ++j)
        for (std::size_t c = 0; c < y.dim(2); ++c) EXPECT_EQ(y.at(i, j, c), base.at(i, j, c));
  }
}

namespace {

// Two classes separated by the sign of the mean of variable 0.
Dataset separable(std::size_t n, std::size_t T, std::size_t V, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    Tensor x(Shape{T, V});
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t v = 0; v < V; ++v) x.at(t, v) = rng.normal(0.0, 0.3) + (v == 0 ? (label ? 0.8 : -0.8) : 0.0);
    d.inputs.push_back(x);
    d.labels.push_back(label);
  }
  return d;
}

LstmClassifierConfig small_lstm() {
  LstmClassifierConfig c;
  c.timesteps = 8;
  c.variables = 2;
  c.units = 4;
  c.classes = 2;
  c.attention = AttentionPlacement::ConvBefore;
  c.head.kernel = 3;
  c.head.hidden_channels = {2};
  return c;
}

}  // namespace

TEST(Train, SeparableToy) {
  const Dataset data = separable(40, 8, 2, 1);
  LstmClassifier model(small_lstm());
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.05;
  std::size_t epochs_used = 0;
  for (; epochs_used < cfg.epochs; epochs_used += 10) {
    TrainConfig chunk = cfg;
    chunk.epochs = 10;
    chunk.seed = epochs_used + 1;
    train(model, data, chunk);
    if (accuracy(model, data) >= 0.99) break;
  }
  EXPECT_GE(accuracy(model, data), 0.99);
  EXPECT_LE(epochs_used, 200u);
}

TEST(Train, FullBatchLossDoesNotIncrease) {
  const Dataset data = separable(20, 8, 2, 2);
  LstmClassifier model(small_lstm());
  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.batch_size = data.size();
  cfg.learning_rate = 0.02;
  cfg.momentum = 0.0;
  cfg.shuffle = false;
  const auto r = train(model, data, cfg);
  for (std::size_t e = 1; e < r.epoch_loss.size(); ++e) EXPECT_LE(r.epoch_loss[e], r.epoch_loss[e - 1] + 1e-12);
  EXPECT_LT(r.epoch_loss.back(), r.epoch_loss.front());
}

TEST(Train, ZeroLearningRateKeepsParameters) {
  const Dataset data = separable(10, 8, 2, 3);
  LstmClassifier model(small_lstm());
  const auto before = save_classifier(model);
  for (auto opt : {OptimizerKind::SgdMomentum, OptimizerKind::Adam}) {
    TrainConfig cfg;
    cfg.epochs = 2;
    cfg.learning_rate = 0.0;
    cfg.optimizer = opt;
    train(model, data, cfg);
    EXPECT_EQ(save_classifier(model), before);
  }
}

TEST(Train, SameSeedSameCurve) {
  const Dataset data = separable(16, 8, 2, 4);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.optimizer = OptimizerKind::Adam;
  cfg.learning_rate = 0.01;
  LstmClassifier a(small_lstm()), b(small_lstm());
  EXPECT_EQ(train(a, data, cfg).epoch_loss, train(b, data, cfg).epoch_loss);
}

TEST(Archive, RoundTripKeepsPredictions) {
  Rng rng(25);
  std::vector<std::unique_ptr<Classifier>> models;
  auto cfg = small_lstm();
  cfg.bidirectional = true;
  cfg.attention = AttentionPlacement::ConvAfter;
  models.push_back(std::make_unique<LstmClassifier>(cfg));
  cfg.attention = AttentionPlacement::DenseBefore;
  models.push_back(std::make_unique<LstmClassifier>(cfg));
  WaveNetConfig w;
  w.timesteps = 8;
  w.variables = 2;
  w.kw = 1;
  models.push_back(std::make_unique<WaveNetClassifier>(w, 3));
  models.push_back(std::make_unique<ConstantClassifier>(std::vector<double>{1, 1, 4, 1, 1}));
  const Tensor x = random_tensor({8, 2}, rng);
  for (const auto& m : models) {
    const auto json = save_classifier(*m);
    const auto back = load_classifier(nlohmann::json::parse(json.dump()));
    EXPECT_EQ(back->kind(), m->kind());
    const Tensor p = m->probabilities(x), q = back->probabilities(x);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_DOUBLE_EQ(p[i], q[i]);
  }
  EXPECT_EQ(models.back()->predict(x), 2);
  auto broken = save_classifier(*models[0]);
  broken["parameters"][0]["shape"] = {1};
  EXPECT_TRUE(error_code_of([&] { load_classifier(broken); }).has_value());
  EXPECT_EQ(error_code_of([] { make_classifier("mystery", {}); }), ErrorCode::ParseError);
}
