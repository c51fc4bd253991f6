#include "betlab/harness/config.hpp"

#include <fstream>

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

nlohmann::json ladder_json(const TickLadder& l) {
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& b : l.bands()) bands.push_back({{"low", b.low.str()}, {"high", b.high.str()}, {"step", b.step.str()}});
  return bands;
}

TickLadder ladder_from(const nlohmann::json& j) {
  std::vector<TickLadder::Band> bands;
  for (const auto& b : j)
    bands.push_back({Odds::parse(b.at("low").get<std::string>()), Odds::parse(b.at("high").get<std::string>()),
                     Odds::parse(b.at("step").get<std::string>())});
  return TickLadder(std::move(bands));
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["category"] = c.category ? nlohmann::json(*c.category) : nlohmann::json(nullptr);
  j["stake"] = c.stake.str();
  j["time"] = {{"open", c.time.open}, {"normal", c.time.normal}, {"emergency", c.time.emergency}};
  j["front_line"] = c.front_line;
  j["ladder"] = ladder_json(c.ladder);
  const auto& t = c.thresholds;
  j["thresholds"] = {{"few_runners_max", t.few_runners_max},     {"medium_runners_max", t.medium_runners_max},
                     {"low_price_max", t.low_price_max},         {"medium_price_max", t.medium_price_max},
                     {"low_liquidity_max", t.low_liquidity_max}, {"medium_liquidity_max", t.medium_liquidity_max}};
  j["fit_liquidity"] = c.fit_liquidity;
  j["seed"] = c.seed;
  j["lead_ms"] = c.lead_ms;
  j["train_fraction"] = c.train_fraction;
  j["min_category_examples"] = c.min_category_examples;
  j["model"] = {{"kind", c.model_kind}, {"config", c.model_config}};
  const auto& tr = c.train;
  j["train"] = {{"epochs", tr.epochs},
                {"batch_size", tr.batch_size},
                {"learning_rate", tr.learning_rate},
                {"optimizer", tr.optimizer == nn::OptimizerKind::Adam ? "adam" : "sgd"},
                {"momentum", tr.momentum},
                {"clip_norm", tr.clip_norm}};
  j["stub_class_means"] = c.stub_class_means;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, "run config must be an object");
    if (j.contains("category") && !j["category"].is_null()) {
      c.category = j["category"].get<int>();
      if (*c.category < 0 || *c.category >= kCategoryCount) fail(ErrorCode::ParseError, "category out of range");
    }
    if (j.contains("stake")) c.stake = j["stake"].is_string() ? Money::parse(j["stake"].get<std::string>())
                                                               : Money::from_double(j["stake"].get<double>());
    if (c.stake <= Money()) fail(ErrorCode::ParseError, "stake must be positive");
    if (j.contains("time")) {
      read(j["time"], "open", c.time.open);
      read(j["time"], "normal", c.time.normal);
      read(j["time"], "emergency", c.time.emergency);
    }
    if (c.time.open < 1 || c.time.normal < 1 || c.time.emergency < 1)
      fail(ErrorCode::ParseError, "time parameters must be positive");
    read(j, "front_line", c.front_line);
    if (j.contains("ladder")) c.ladder = ladder_from(j["ladder"]);
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      read(t, "few_runners_max", c.thresholds.few_runners_max);
      read(t, "medium_runners_max", c.thresholds.medium_runners_max);
      read(t, "low_price_max", c.thresholds.low_price_max);
      read(t, "medium_price_max", c.thresholds.medium_price_max);
      read(t, "low_liquidity_max", c.thresholds.low_liquidity_max);
      read(t, "medium_liquidity_max", c.thresholds.medium_liquidity_max);
    }
    read(j, "fit_liquidity", c.fit_liquidity);
    read(j, "seed", c.seed);
    read(j, "lead_ms", c.lead_ms);
    read(j, "train_fraction", c.train_fraction);
    if (!(c.train_fraction > 0.0 && c.train_fraction <= 1.0)) fail(ErrorCode::ParseError, "train_fraction out of (0, 1]");
    read(j, "min_category_examples", c.min_category_examples);
    if (j.contains("model")) {
      read(j["model"], "kind", c.model_kind);
      if (j["model"].contains("config")) c.model_config = j["model"]["config"];
    }
    if (j.contains("train")) {
      const auto& t = j["train"];
      read(t, "epochs", c.train.epochs);
      read(t, "batch_size", c.train.batch_size);
      read(t, "learning_rate", c.train.learning_rate);
      read(t, "momentum", c.train.momentum);
      read(t, "clip_norm", c.train.clip_norm);
      if (t.contains("optimizer")) {
        const auto o = t["optimizer"].get<std::string>();
        if (o == "adam")
          c.train.optimizer = nn::OptimizerKind::Adam;
        else if (o == "sgd")
          c.train.optimizer = nn::OptimizerKind::SgdMomentum;
        else
          fail(ErrorCode::ParseError, "unknown optimizer " + o);
      }
    }
    read(j, "stub_class_means", c.stub_class_means);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("run config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(ErrorCode::ParseError, std::string("run config: ") + e.what());
  }
  c.train.seed = c.seed;
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace betlab
