#include "betlab/nnkit/models.hpp"

#include <cmath>

#include "betlab/core/error.hpp"

namespace betlab::nn {

using nlohmann::json;

namespace {

constexpr const char* kPlacements[] = {"none", "dense_before", "conv_before", "conv_after"};

AttentionPlacement placement_from(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kPlacements[i]) return static_cast<AttentionPlacement>(i);
  fail(ErrorCode::ParseError, "unknown attention placement '" + s + "'");
}

json head_to_json(const ConvHeadSpec& h) {
  return {{"hidden_channels", h.hidden_channels},
          {"kernel", h.kernel},
          {"final_channels", h.final_channels},
          {"padding", std::string(to_string(h.padding))},
          {"hidden_activation", std::string(to_string(h.hidden_activation))},
          {"reduce", h.reduce == HeadReduce::AveragePool ? "average_pool" : "single_channel"}};
}

ConvHeadSpec head_from_json(const json& j) {
  ConvHeadSpec h;
  h.hidden_channels = j.value("hidden_channels", h.hidden_channels);
  h.kernel = j.value("kernel", h.kernel);
  h.final_channels = j.value("final_channels", h.final_channels);
  h.padding = pad_method_from_string(j.value("padding", std::string("same")));
  h.hidden_activation = activation_from_string(j.value("hidden_activation", std::string("tanh")));
  h.reduce = j.value("reduce", std::string("single_channel")) == "average_pool" ? HeadReduce::AveragePool
                                                                                 : HeadReduce::SingleChannel;
  return h;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

Tensor Classifier::probabilities(const Tensor& x) const { return softmax(logits(x), 0)->value; }

int Classifier::predict(const Tensor& x) const {
  const Tensor z = logits(x)->value;
  std::size_t best = 0;
  for (std::size_t i = 1; i < z.size(); ++i)
    if (z[i] > z[best]) best = i;
  return static_cast<int>(best);
}

LstmClassifier::LstmClassifier(const LstmClassifierConfig& c) : config_(c) {
  if (c.layers < 1 || c.units < 1 || c.classes < 2) fail(ErrorCode::InvalidArgument, "lstm classifier sizes");
  Rng rng(c.seed);
  if (c.attention == AttentionPlacement::DenseBefore) dense_attention_ = DenseAttention(c.timesteps, rng);
  if (c.attention == AttentionPlacement::ConvBefore) conv_attention_ = ConvAttention1D(c.variables, c.head, rng);
  std::size_t in = c.variables;
  for (std::size_t l = 0; l < c.layers; ++l) {
    forward_.emplace_back(in, c.units, false, rng);
    if (c.bidirectional) backward_.emplace_back(in, c.units, true, rng);
    in = c.bidirectional ? 2 * c.units : c.units;
  }
  if (c.attention == AttentionPlacement::ConvAfter) conv_attention_ = ConvAttention1D(in, c.head, rng);
  head_ = Dense(in, c.classes, Activation::Linear, rng);
}

Var LstmClassifier::logits(const Tensor& x) const {
  if (x.shape() != Shape{config_.timesteps, config_.variables})
    fail(ErrorCode::ShapeMismatch, "lstm classifier expects " + shape_str({config_.timesteps, config_.variables}) +
                                       ", got " + shape_str(x.shape()));
  Var h = constant(x);
  if (config_.attention == AttentionPlacement::DenseBefore) h = dense_attention_(h);
  if (config_.attention == AttentionPlacement::ConvBefore) h = conv_attention_(h);
  const std::size_t T = config_.timesteps;
  Var last;
  for (std::size_t l = 0; l < forward_.size(); ++l) {
    const Var f = forward_[l](h);
    if (config_.bidirectional) {
      const Var b = backward_[l](h);
      h = concat_last({f, b});
      last = concat_last({row(f, T - 1), row(b, 0)});
    } else {
      h = f;
      last = row(f, T - 1);
    }
  }
  if (config_.attention == AttentionPlacement::ConvAfter) return head_(sum_rows(conv_attention_(h)));
  return head_(last);
}

ParamList LstmClassifier::parameters() const {
  ParamList out;
  if (config_.attention == AttentionPlacement::DenseBefore) dense_attention_.collect(out, "attention");
  if (config_.attention == AttentionPlacement::ConvBefore || config_.attention == AttentionPlacement::ConvAfter)
    conv_attention_.collect(out, "attention");
  for (std::size_t l = 0; l < forward_.size(); ++l) {
    forward_[l].collect(out, "lstm" + std::to_string(l) + ".fwd");
    if (config_.bidirectional) backward_[l].collect(out, "lstm" + std::to_string(l) + ".bwd");
  }
  head_.collect(out, "head");
  return out;
}

json LstmClassifier::config() const {
  return {{"timesteps", config_.timesteps}, {"variables", config_.variables},
          {"units", config_.units},         {"layers", config_.layers},
          {"bidirectional", config_.bidirectional}, {"classes", config_.classes},
          {"attention", kPlacements[static_cast<int>(config_.attention)]},
          {"head", head_to_json(config_.head)}, {"seed", config_.seed}};
}

WaveNetClassifier::WaveNetClassifier(const WaveNetConfig& c, std::uint64_t seed) : seed_(seed) {
  Rng rng(seed);
  net_ = WaveNet2D(c, rng);
}

ParamList WaveNetClassifier::parameters() const {
  ParamList out;
  net_.collect(out, "wavenet");
  return out;
}

json WaveNetClassifier::config() const {
  const WaveNetConfig& c = net_.config;
  return {{"timesteps", c.timesteps}, {"variables", c.variables},     {"k", c.k},
          {"kw", c.kw},               {"depth", c.depth},             {"channels", c.channels},
          {"post_kernel", c.post_kernel}, {"post_stride", c.post_stride}, {"post_channels", c.post_channels},
          {"classes", c.classes},     {"roll", c.roll},               {"seed", seed_}};
}

ConvLstmClassifier::ConvLstmClassifier(const ConvLstmClassifierConfig& c) : config_(c) {
  if (c.segments < 1 || c.timesteps % c.segments != 0)
    fail(ErrorCode::InvalidArgument, "timesteps must split evenly into segments");
  Rng rng(c.seed);
  if (c.attention) {
    ConvHead2DSpec spec;
    spec.roll_segments = c.roll_segments;
    attention_ = ConvAttention2D(c.variables, spec, rng);
  }
  cell_ = ConvLstm2D(1, c.filters, c.kernel_h, c.kernel_w, c.roll_variables, rng);
  head_ = Dense(c.filters, c.classes, Activation::Linear, rng);
}

Var ConvLstmClassifier::logits(const Tensor& x) const {
  if (x.shape() != Shape{config_.timesteps, config_.variables})
    fail(ErrorCode::ShapeMismatch, "convlstm classifier input " + shape_str(x.shape()));
  const std::size_t S = config_.segments, T = config_.timesteps / S, V = config_.variables;
  Var h = constant(x.reshaped(Shape{S, T, V}));
  if (config_.attention) h = attention_(h);
  const Var maps = cell_(reshape(h, Shape{S, T, V, 1}));
  return head_(global_average_pool(maps));
}

ParamList ConvLstmClassifier::parameters() const {
  ParamList out;
  if (config_.attention) attention_.collect(out, "attention");
  cell_.collect(out, "convlstm");
  head_.collect(out, "head");
  return out;
}

json ConvLstmClassifier::config() const {
  return {{"timesteps", config_.timesteps}, {"variables", config_.variables}, {"segments", config_.segments},
          {"filters", config_.filters},     {"kernel_h", config_.kernel_h},   {"kernel_w", config_.kernel_w},
          {"roll_variables", config_.roll_variables}, {"attention", config_.attention},
          {"roll_segments", config_.roll_segments},   {"classes", config_.classes}, {"seed", config_.seed}};
}

ConstantClassifier::ConstantClassifier(std::vector<double> p) : probabilities_(std::move(p)) {
  if (probabilities_.size() < 2) fail(ErrorCode::InvalidArgument, "constant model needs at least two classes");
  double total = 0.0;
  for (double v : probabilities_) {
    if (!(v > 0.0)) fail(ErrorCode::InvalidArgument, "constant model probabilities must be positive");
    total += v;
  }
  for (double& v : probabilities_) v /= total;
}

Var ConstantClassifier::logits(const Tensor&) const {
  Tensor z(Shape{probabilities_.size()});
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::log(probabilities_[i]);
  return constant(std::move(z));
}

json ConstantClassifier::config() const { return {{"probabilities", probabilities_}}; }

std::unique_ptr<Classifier> make_classifier(const std::string& kind, const json& j) {
  try {
    if (kind == "lstm") {
      LstmClassifierConfig c;
      c.timesteps = get_or(j, "timesteps", c.timesteps);
      c.variables = get_or(j, "variables", c.variables);
      c.units = get_or(j, "units", c.units);
      c.layers = get_or(j, "layers", c.layers);
      c.bidirectional = get_or(j, "bidirectional", c.bidirectional);
      c.classes = get_or(j, "classes", c.classes);
      c.attention = placement_from(get_or<std::string>(j, "attention", "conv_before"));
      if (j.contains("head")) c.head = head_from_json(j.at("head"));
      c.seed = get_or(j, "seed", c.seed);
      return std::make_unique<LstmClassifier>(c);
    }
    if (kind == "wavenet2d") {
      WaveNetConfig c;
      c.timesteps = get_or(j, "timesteps", c.timesteps);
      c.variables = get_or(j, "variables", c.variables);
      c.k = get_or(j, "k", c.k);
      c.kw = get_or(j, "kw", c.kw);
      c.depth = get_or(j, "depth", c.depth);
      c.channels = get_or(j, "channels", c.channels);
      c.post_kernel = get_or(j, "post_kernel", c.post_kernel);
      c.post_stride = get_or(j, "post_stride", c.post_stride);
      c.post_channels = get_or(j, "post_channels", c.post_channels);
      c.classes = get_or(j, "classes", c.classes);
      c.roll = get_or(j, "roll", c.roll);
      return std::make_unique<WaveNetClassifier>(c, get_or<std::uint64_t>(j, "seed", 1));
    }
    if (kind == "convlstm2d") {
      ConvLstmClassifierConfig c;
      c.timesteps = get_or(j, "timesteps", c.timesteps);
      c.variables = get_or(j, "variables", c.variables);
      c.segments = get_or(j, "segments", c.segments);
      c.filters = get_or(j, "filters", c.filters);
      c.kernel_h = get_or(j, "kernel_h", c.kernel_h);
      c.kernel_w = get_or(j, "kernel_w", c.kernel_w);
      c.roll_variables = get_or(j, "roll_variables", c.roll_variables);
      c.attention = get_or(j, "attention", c.attention);
      c.roll_segments = get_or(j, "roll_segments", c.roll_segments);
      c.classes = get_or(j, "classes", c.classes);
      c.seed = get_or(j, "seed", c.seed);
      return std::make_unique<ConvLstmClassifier>(c);
    }
    if (kind == "constant") return std::make_unique<ConstantClassifier>(j.at("probabilities").get<std::vector<double>>());
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("model config: ") + e.what());
  }
  fail(ErrorCode::ParseError, "unknown model kind '" + kind + "'");
}

json save_classifier(const Classifier& model) {
  json params = json::array();
  for (const auto& p : model.parameters())
    params.push_back({{"name", p.name}, {"shape", p.var->value.shape()}, {"data", p.var->value.values()}});
  return {{"kind", model.kind()}, {"config", model.config()}, {"parameters", params}};
}

std::unique_ptr<Classifier> load_classifier(const json& archive) {
  std::unique_ptr<Classifier> model;
  try {
    model = make_classifier(archive.at("kind").get<std::string>(), archive.at("config"));
    const auto params = model->parameters();
    const json& stored = archive.at("parameters");
    if (stored.size() != params.size())
      fail(ErrorCode::ParseError, "archive has " + std::to_string(stored.size()) + " parameters, model expects " +
                                      std::to_string(params.size()));
    for (std::size_t i = 0; i < params.size(); ++i) {
      const json& s = stored[i];
      if (s.at("name").get<std::string>() != params[i].name)
        fail(ErrorCode::ParseError, "parameter " + std::to_string(i) + " is '" + s.at("name").get<std::string>() +
                                        "', expected '" + params[i].name + "'");
      const Shape shape = s.at("shape").get<Shape>();
      if (shape != params[i].var->value.shape())
        fail(ErrorCode::ShapeMismatch, "parameter '" + params[i].name + "' has shape " + shape_str(shape));
      params[i].var->value = Tensor(shape, s.at("data").get<std::vector<double>>());
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("model archive: ") + e.what());
  }
  return model;
}

}  // namespace betlab::nn
