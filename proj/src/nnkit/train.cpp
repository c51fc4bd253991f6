#include "betlab/nnkit/train.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "betlab/core/error.hpp"

namespace betlab::nn {

Optimizer::Optimizer(const ParamList& params, const TrainConfig& config) : params_(params), config_(config) {
  for (const auto& p : params_) {
    m_.emplace_back(p.var->value.shape());
    v_.emplace_back(p.var->value.shape());
  }
}

void Optimizer::step(std::size_t batch) {
  if (batch == 0) return;
  const double inv = 1.0 / static_cast<double>(batch);
  double scale = inv;
  if (config_.clip_norm > 0.0) {
    double sq = 0.0;
    for (const auto& p : params_)
      for (double g : p.var->grad.values()) sq += g * inv * g * inv;
    const double norm = std::sqrt(sq);
    if (norm > config_.clip_norm) scale *= config_.clip_norm / norm;
  }
  ++t_;
  const double lr = config_.learning_rate;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Node& n = *params_[i].var;
    if (n.grad.empty()) continue;
    Tensor& w = n.value;
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double g = n.grad[k] * scale;
      if (config_.optimizer == OptimizerKind::SgdMomentum) {
        m[k] = config_.momentum * m[k] - lr * g;
        w[k] += m[k];
      } else {
        m[k] = config_.beta1 * m[k] + (1.0 - config_.beta1) * g;
        v[k] = config_.beta2 * v[k] + (1.0 - config_.beta2) * g * g;
        const double mh = m[k] / (1.0 - std::pow(config_.beta1, static_cast<double>(t_)));
        const double vh = v[k] / (1.0 - std::pow(config_.beta2, static_cast<double>(t_)));
        w[k] -= lr * mh / (std::sqrt(vh) + config_.epsilon);
      }
    }
    n.zero_grad();
  }
}

TrainResult train(Classifier& model, const Dataset& data, const TrainConfig& config) {
  if (data.inputs.size() != data.labels.size()) fail(ErrorCode::ShapeMismatch, "inputs and labels differ in count");
  if (data.size() == 0) fail(ErrorCode::InvalidArgument, "empty training set");
  if (config.batch_size == 0) fail(ErrorCode::InvalidArgument, "batch size must be positive");
  if (graph_has_forward_only(model.logits(data.inputs[0])))
    fail(ErrorCode::GraphContainsForwardOnlyLayer, model.kind() + " has a layer without a backward pass");

  const auto start = std::chrono::steady_clock::now();
  const ParamList params = model.parameters();
  for (const auto& p : params) p.var->zero_grad();
  Optimizer opt(params, config);
  Rng rng(config.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t correct = 0, in_batch = 0;
    for (std::size_t idx : order) {
      const Var logits = model.logits(data.inputs[idx]);
      const Tensor& z = logits->value;
      std::size_t best = 0;
      for (std::size_t c = 1; c < z.size(); ++c)
        if (z[c] > z[best]) best = c;
      correct += static_cast<int>(best) == data.labels[idx];
      const Var loss = softmax_cross_entropy(logits, data.labels[idx]);
      loss_sum += loss->value[0];
      if (loss->requires_grad) backward(loss);
      if (++in_batch == config.batch_size) {
        opt.step(in_batch);
        in_batch = 0;
      }
    }
    opt.step(in_batch);
    const double n = static_cast<double>(data.size());
    result.epoch_loss.push_back(loss_sum / n);
    result.epoch_accuracy.push_back(static_cast<double>(correct) / n);
    if (config.on_epoch) config.on_epoch(epoch, result.epoch_loss.back(), result.epoch_accuracy.back());
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (config.time_budget_seconds && result.seconds >= *config.time_budget_seconds) break;
  }
  return result;
}

double accuracy(const Classifier& model, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) correct += model.predict(data.inputs[i]) == data.labels[i];
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double mean_loss(const Classifier& model, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    total += softmax_cross_entropy(model.logits(data.inputs[i]), data.labels[i])->value[0];
  return total / static_cast<double>(data.size());
}

}  // namespace betlab::nn
