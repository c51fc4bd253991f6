#pragma once

#include <optional>
#include <vector>

#include "betlab/harness/bundle.hpp"
#include "betlab/harness/config.hpp"
#include "betlab/harness/trade_log.hpp"
#include "betlab/ladder/frame.hpp"

namespace betlab {

// Index of the first aligned frame at or after start - lead. Throws
// InsufficientFrames when fewer than 512 frames precede it.
std::size_t prediction_frame(const Market& aligned, const RunConfig& config);

// Normalized (128, 9) model input for one runner, ending just before `frame`.
nn::Tensor model_input(const Market& aligned, std::size_t runner, std::size_t frame, int wom_depth,
                       const NormalizationSpec& normalization);

// Predicts at the prediction frame and trades the runner over the frames
// that follow. Empty when the prediction is Neutral, the runner is outside
// `config.category`, or the class has no usable mechanism parameters. A
// category without a model yields a NOT_OPEN line.
std::optional<TradeLogLine> simulate_runner(const Market& aligned, std::size_t runner, std::size_t frame,
                                            const ModelBundle& bundle, const RunConfig& config);

std::vector<TradeLogLine> simulate_market(const Market& market, const ModelBundle& bundle, const RunConfig& config);

// Markets in order of scheduled start (then id); runners in book order.
std::vector<TradeLogLine> simulate(std::vector<Market> markets, const ModelBundle& bundle, const RunConfig& config);

}  // namespace betlab
