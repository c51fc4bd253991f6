#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "betlab/nnkit/models.hpp"

namespace betlab::nn {

struct Dataset {
  std::vector<Tensor> inputs;
  std::vector<int> labels;

  std::size_t size() const { return inputs.size(); }
};

enum class OptimizerKind { SgdMomentum, Adam };

struct TrainConfig {
  std::size_t epochs = 20;
  std::size_t batch_size = 16;
  double learning_rate = 0.01;
  OptimizerKind optimizer = OptimizerKind::SgdMomentum;
  double momentum = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 0.0;  // 0 disables gradient clipping
  std::uint64_t seed = 1;
  bool shuffle = true;
  // Stop after the epoch that crosses this wall-clock budget.
  std::optional<double> time_budget_seconds;
  // Called after every epoch with (epoch, mean loss, training accuracy).
  std::function<void(std::size_t, double, double)> on_epoch;
};

struct TrainResult {
  std::vector<double> epoch_loss;
  std::vector<double> epoch_accuracy;  // measured during the epoch, before each step
  double seconds = 0.0;
};

class Optimizer {
 public:
  Optimizer(const ParamList& params, const TrainConfig& config);
  // Applies the accumulated gradients divided by `batch`, then zeroes them.
  void step(std::size_t batch);

 private:
  ParamList params_;
  TrainConfig config_;
  std::vector<Tensor> m_, v_;
  std::size_t t_ = 0;
};

// Mean cross-entropy minibatch training. Throws GraphContainsForwardOnlyLayer
// when the model has a layer without a backward pass.
TrainResult train(Classifier& model, const Dataset& data, const TrainConfig& config);

double accuracy(const Classifier& model, const Dataset& data);
double mean_loss(const Classifier& model, const Dataset& data);

}  // namespace betlab::nn
