#include "betlab/harness/simulate.hpp"

#include <algorithm>

#include "betlab/core/error.hpp"
#include "betlab/core/log.hpp"
#include "betlab/exchange/settlement.hpp"
#include "betlab/features/example.hpp"

namespace betlab {

std::size_t prediction_frame(const Market& aligned, const RunConfig& config) {
  if (aligned.runners.empty()) fail(ErrorCode::InsufficientFrames, aligned.market_id + ": no runners");
  const auto& frames = aligned.runners.front().frames;
  const std::int64_t at = aligned.start_ms - config.lead_ms;
  auto it = std::lower_bound(frames.begin(), frames.end(), at,
                             [](const Frame& f, std::int64_t t) { return f.timestamp_ms < t; });
  const auto index = static_cast<std::size_t>(it - frames.begin());
  if (index < kWindowFrames)
    fail(ErrorCode::InsufficientFrames, aligned.market_id + ": " + std::to_string(index) +
                                            " frames before the prediction instant, need " +
                                            std::to_string(kWindowFrames));
  return index;
}

nn::Tensor model_input(const Market& aligned, std::size_t runner, std::size_t frame, int wom_depth,
                       const NormalizationSpec& normalization) {
  FeatureMatrix m = build_example(aligned, runner, frame, wom_depth);
  normalization.apply(m);
  return nn::Tensor(nn::Shape{m.rows, m.cols}, std::move(m.data));
}

namespace {

// Greened result of closing `stake` opened at `entry` at price `exit`.
Money greened_pl(Direction d, Odds entry, Odds exit, Money stake) {
  if (d == Direction::Up) return stake - close_amount_back(entry, stake, exit);
  return close_amount_lay(entry, stake, exit) - stake;
}

}  // namespace

std::optional<TradeLogLine> simulate_runner(const Market& aligned, std::size_t runner, std::size_t frame,
                                            const ModelBundle& bundle, const RunConfig& config) {
  const RunnerBook& book = aligned.runners.at(runner);
  const Frame& now = book.frames.at(frame - 1);
  const CategoryKey key = categorize(aligned, runner, frame - 1, bundle.thresholds);
  const int category = category_index(key);
  if (config.category && *config.category != category) return std::nullopt;

  TradeLogLine line;
  line.event = aligned.event;
  line.runner = book.runner_id;
  line.volume = now.traded_total().as_double();
  line.n_r = static_cast<int>(aligned.runners.size());
  if (!now.last_traded) {
    log_warning(aligned.market_id + "/" + book.runner_id + ": no traded price at the prediction instant");
    return std::nullopt;
  }
  const int entry = *now.last_traded;
  line.entr = config.ladder.price_value(entry);

  const CategoryModel* model = bundle.find(category);
  if (!model) {
    log_warning(std::string(to_string(ErrorCode::MissingCategoryModel)) + ": " + aligned.market_id + "/" +
                book.runner_id + " category " + std::to_string(category));
    return line;
  }

  const nn::Tensor probs =
      model->classifier->probabilities(model_input(aligned, runner, frame, wom_depth(key.price), model->normalization));
  std::array<double, kMovementClasses> p{};
  for (int k = 0; k < kMovementClasses; ++k) p[k] = probs[static_cast<std::size_t>(k)];
  const MovementClass cls = predicted_class(p);
  const auto choice = select_mechanism(cls);
  if (!choice) return std::nullopt;

  MechanismTicks ticks;
  try {
    ticks = params_from_class(model->stats, cls, choice->kind);
  } catch (const Error& e) {
    log_warning(aligned.market_id + "/" + book.runner_id + ": " + e.what());
    return std::nullopt;
  }

  SessionSetup setup{*choice, ticks, entry, config.stake, config.time, config.front_line};
  auto session = make_session(setup, config.ladder);
  const std::size_t end = std::min(book.frames.size(), frame + kTargetFrames);
  for (std::size_t f = frame; f < end && !session->terminal(); ++f) session->step(book.frames[f]);
  session->finish();
  const SessionReport r = session->report();

  const int sign = favourable_sign(choice->direction);
  const int target = config.ladder.clamp(entry + sign * ticks.target);
  const int stop = config.ladder.clamp(entry - sign * ticks.stop);
  const Odds entry_odds = config.ladder.price_at(entry);
  line.tm = mechanism_code(choice->kind);
  line.dir = choice->direction == Direction::Up ? "LB" : "BL";
  line.targ = config.ladder.price_value(target);
  line.sto = config.ladder.price_value(stop);
  line.t_p = ticks.target;
  line.t_l = ticks.stop;
  line.pt_p = greened_pl(choice->direction, entry_odds, config.ladder.price_at(target), config.stake);
  line.pt_l = greened_pl(choice->direction, entry_odds, config.ladder.price_at(stop), config.stake);
  if (r.state == TradeState::NotOpen || r.open_matched.is_zero()) return line;

  line.end_state = EndState::Closed;
  line.pl = r.pl;
  line.o_odd = r.open_price.value_or(0.0);
  line.c_odd = r.close_price.value_or(0.0);
  line.o_am = r.open_matched;
  line.cat_am = r.close_matched;
  return line;
}

std::vector<TradeLogLine> simulate_market(const Market& market, const ModelBundle& bundle, const RunConfig& config) {
  const Market aligned = align_runners(market);
  const std::size_t frame = prediction_frame(aligned, config);
  std::vector<TradeLogLine> out;
  for (std::size_t r = 0; r < aligned.runners.size(); ++r)
    if (auto line = simulate_runner(aligned, r, frame, bundle, config)) out.push_back(std::move(*line));
  return out;
}

std::vector<TradeLogLine> simulate(std::vector<Market> markets, const ModelBundle& bundle, const RunConfig& config) {
  std::sort(markets.begin(), markets.end(), [](const Market& a, const Market& b) {
    return a.start_ms != b.start_ms ? a.start_ms < b.start_ms : a.market_id < b.market_id;
  });
  std::vector<TradeLogLine> out;
  for (const auto& m : markets) {
    try {
      auto lines = simulate_market(m, bundle, config);
      out.insert(out.end(), lines.begin(), lines.end());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientFrames) throw;
      log_warning(e.what());
    }
  }
  return out;
}

}  // namespace betlab
