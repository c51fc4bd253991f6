#pragma once

#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "betlab/nnkit/attention.hpp"
#include "betlab/nnkit/convlstm.hpp"
#include "betlab/nnkit/wavenet.hpp"

namespace betlab::nn {

// Maps one (T, V) input to class logits.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string kind() const = 0;
  virtual Var logits(const Tensor& x) const = 0;
  virtual ParamList parameters() const = 0;
  virtual nlohmann::json config() const = 0;

  Tensor probabilities(const Tensor& x) const;
  // Highest probability; the lower class wins ties.
  int predict(const Tensor& x) const;
};

enum class AttentionPlacement { None, DenseBefore, ConvBefore, ConvAfter };

struct LstmClassifierConfig {
  std::size_t timesteps = 128;
  std::size_t variables = 9;
  std::size_t units = 16;
  std::size_t layers = 1;
  bool bidirectional = false;
  std::size_t classes = 5;
  AttentionPlacement attention = AttentionPlacement::ConvBefore;
  ConvHeadSpec head;
  std::uint64_t seed = 1;
};

// Optional attention before the recurrent stack (on the input variables) or
// after it (on the NRC output sequences), stacked LSTMs, dense softmax head.
// With attention after, the context is summed over time; otherwise the final
// hidden state feeds the head.
class LstmClassifier : public Classifier {
 public:
  explicit LstmClassifier(const LstmClassifierConfig& config);
  std::string kind() const override { return "lstm"; }
  Var logits(const Tensor& x) const override;
  ParamList parameters() const override;
  nlohmann::json config() const override;
  const LstmClassifierConfig& settings() const { return config_; }

 private:
  LstmClassifierConfig config_;
  DenseAttention dense_attention_;
  ConvAttention1D conv_attention_;
  std::vector<Lstm> forward_;
  std::vector<Lstm> backward_;
  Dense head_;
};

class WaveNetClassifier : public Classifier {
 public:
  WaveNetClassifier(const WaveNetConfig& config, std::uint64_t seed);
  std::string kind() const override { return "wavenet2d"; }
  Var logits(const Tensor& x) const override { return net_.logits(constant(x)); }
  ParamList parameters() const override;
  nlohmann::json config() const override;
  const WaveNet2D& net() const { return net_; }

 private:
  WaveNet2D net_;
  std::uint64_t seed_;
};

struct ConvLstmClassifierConfig {
  std::size_t timesteps = 128;
  std::size_t variables = 9;
  std::size_t segments = 4;  // timesteps split into equal segments
  std::size_t filters = 4;
  std::size_t kernel_h = 3;
  std::size_t kernel_w = 3;
  bool roll_variables = true;
  bool attention = false;  // 2D convolutional attention before the recurrent layer
  bool roll_segments = false;
  std::size_t classes = 5;
  std::uint64_t seed = 1;
};

// Forward-only: exists for inference and wiring checks; training rejects it.
class ConvLstmClassifier : public Classifier {
 public:
  explicit ConvLstmClassifier(const ConvLstmClassifierConfig& config);
  std::string kind() const override { return "convlstm2d"; }
  Var logits(const Tensor& x) const override;
  ParamList parameters() const override;
  nlohmann::json config() const override;

 private:
  ConvLstmClassifierConfig config_;
  ConvAttention2D attention_;
  ConvLstm2D cell_;
  Dense head_;
};

// Fixed class probabilities regardless of input.
class ConstantClassifier : public Classifier {
 public:
  explicit ConstantClassifier(std::vector<double> probabilities);
  std::string kind() const override { return "constant"; }
  Var logits(const Tensor& x) const override;
  ParamList parameters() const override { return {}; }
  nlohmann::json config() const override;

 private:
  std::vector<double> probabilities_;
};

std::unique_ptr<Classifier> make_classifier(const std::string& kind, const nlohmann::json& config);

// {"kind", "config", "parameters": [{"name", "shape", "data"}]}
nlohmann::json save_classifier(const Classifier& model);
std::unique_ptr<Classifier> load_classifier(const nlohmann::json& archive);

}  // namespace betlab::nn
