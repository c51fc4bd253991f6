#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "betlab/core/error.hpp"
#include "betlab/core/log.hpp"
#include "betlab/exchange/replay.hpp"
#include "betlab/harness/pipeline.hpp"
#include "betlab/harness/simulate.hpp"
#include "betlab/harness/synthetic.hpp"
#include "betlab/ladder/frame_io.hpp"

namespace fs = std::filesystem;
using namespace betlab;

namespace {

struct Options {
  std::string config;
  std::optional<int> category;
  std::optional<std::string> stake;
  std::optional<std::uint64_t> seed;
  std::string frames;
  std::string model;
  std::string data;
  std::string out = ".";
  std::optional<int> stub;
  std::optional<double> reference_accuracy;
  std::string runner;
  int count = 20;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Run configuration (JSON)");
  cmd->add_option("--category", o.category, "Restrict to one category index (0-53)")->check(CLI::Range(0, 53));
  cmd->add_option("--stake", o.stake, "Stake per trade in pounds");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_flag("--quiet", o.quiet, "Only print warnings and errors");
}

RunConfig resolve(const Options& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (o.category) c.category = *o.category;
  if (o.stake) {
    c.stake = Money::parse(*o.stake);
    if (c.stake <= Money()) fail(ErrorCode::InvalidArgument, "stake must be positive");
  }
  if (o.seed) c.seed = c.train.seed = *o.seed;
  return c;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) fail(ErrorCode::IoError, "cannot write " + p.string());
  return out;
}

void print_summary(const nlohmann::json& j) { std::cout << j.dump() << '\n'; }

int run_generate(const Options& o) {
  const RunConfig c = resolve(o);
  const auto markets = generate_markets(o.count, c.seed, SyntheticParams{}, c.ladder);
  save_markets(o.out, markets);
  print_summary({{"command", "generate"}, {"markets", markets.size()}, {"out", o.out}});
  return 0;
}

int run_ingest(const Options& o) {
  const RunConfig c = resolve(o);
  std::vector<Market> markets;
  std::size_t frames = 0, runners = 0, violations = 0;
  for (const auto& m : load_markets(o.frames)) {
    for (const auto& r : m.runners) {
      ++runners;
      frames += r.frames.size();
      for (const auto& v : validate_sequence(r.frames, c.ladder)) {
        ++violations;
        log_warning(m.market_id + "/" + r.runner_id + " frame " + std::to_string(v.frame_index) + ": " +
                    std::string(to_string(v.violation)));
      }
    }
    markets.push_back(align_runners(m));
  }
  save_markets(o.out, markets);
  print_summary({{"command", "ingest"},
                 {"markets", markets.size()},
                 {"runners", runners},
                 {"frames", frames},
                 {"violations", violations},
                 {"out", o.out}});
  return 0;
}

int run_featurize(const Options& o) {
  const RunConfig c = resolve(o);
  const FeatureSet set = featurize(load_markets(o.frames), c);
  save_feature_set(o.out, set);
  nlohmann::json counts;
  for (const auto& [index, d] : set.categories)
    counts[std::to_string(index)] = {{"train", d.train.size()}, {"validation", d.validation.size()}};
  print_summary({{"command", "featurize"}, {"categories", counts}, {"out", o.out}});
  return 0;
}

int run_train(const Options& o) {
  const RunConfig c = resolve(o);
  const FeatureSet set = load_feature_set(o.data);
  std::vector<TrainLogEntry> log;
  const ModelBundle bundle = train_bundle(set, c, &log);
  fs::create_directories(o.out);
  save_bundle((fs::path(o.out) / "bundle.json").string(), bundle);
  auto loss = open_out(fs::path(o.out) / "loss.csv");
  loss << "category,epoch,loss,accuracy\n";
  for (const auto& e : log) loss << e.category << ',' << e.epoch << ',' << e.loss << ',' << e.accuracy << '\n';
  print_summary({{"command", "train"}, {"categories", bundle.categories.size()}, {"out", o.out}});
  return 0;
}

int run_evaluate(const Options& o) {
  const RunConfig c = resolve(o);
  const Evaluation ev = evaluate_bundle(load_bundle(o.model), load_feature_set(o.data), c);
  const nlohmann::json report = evaluation_json(ev, o.reference_accuracy);
  fs::create_directories(o.out);
  open_out(fs::path(o.out) / "metrics.json") << report.dump(2) << '\n';
  print_summary({{"command", "evaluate"}, {"accuracy", report["overall"]["accuracy"]}, {"out", o.out}});
  return 0;
}

int run_simulate(const Options& o) {
  const RunConfig c = resolve(o);
  if (o.model.empty() == !o.stub.has_value())
    fail(ErrorCode::InvalidArgument, "simulate needs exactly one of --model or --stub");
  const ModelBundle bundle = o.stub ? stub_bundle(*o.stub, c.stub_class_means, c.thresholds) : load_bundle(o.model);
  const auto lines = simulate(load_markets(o.frames), bundle, c);
  fs::create_directories(o.out);
  auto trades = open_out(fs::path(o.out) / "trades.tsv");
  write_trade_log(trades, lines);
  auto pl = open_out(fs::path(o.out) / "pl.csv");
  write_pl_curve(pl, lines, c.stake);
  Money total;
  int closed = 0;
  for (const auto& l : lines)
    if (l.end_state == EndState::Closed) {
      ++closed;
      total += l.pl;
    }
  print_summary({{"command", "simulate"}, {"lines", lines.size()}, {"closed", closed}, {"pl", total.str()}, {"out", o.out}});
  return 0;
}

int run_replay(const Options& o) {
  const RunConfig c = resolve(o);
  const Market m = load_market(o.frames, c.ladder);
  fs::create_directories(o.out);
  auto out = open_out(fs::path(o.out) / "replay.tsv");
  out << "timestamp_ms\trunner\tlast_traded\tbest_back\tbest_lay\tbids\tasks\ttraded_total\tviolations\n";
  std::size_t rows = 0;
  for (const auto& r : m.runners) {
    if (!o.runner.empty() && r.runner_id != o.runner) continue;
    ReplayExchange ex(c.ladder);
    const auto seq = validate_sequence(r.frames, c.ladder);
    for (std::size_t i = 0; i < r.frames.size(); ++i) {
      const Frame& f = r.frames[i];
      ex.on_frame(f);
      auto price = [&](std::optional<int> t) { return t ? c.ladder.price_at(*t).str() : std::string("-"); };
      std::string bad;
      for (const auto& v : seq)
        if (v.frame_index == i) bad += (bad.empty() ? "" : ",") + std::string(to_string(v.violation));
      out << f.timestamp_ms << '\t' << r.runner_id << '\t' << price(f.last_traded) << '\t'
          << price(ex.best_opposing(Side::Back)) << '\t' << price(ex.best_opposing(Side::Lay)) << '\t'
          << format_depth(f.bids, c.ladder) << '\t' << format_depth(f.asks, c.ladder) << '\t'
          << f.traded_total().str() << '\t' << (bad.empty() ? "-" : bad) << '\n';
      ++rows;
    }
  }
  if (!o.runner.empty() && rows == 0) fail(ErrorCode::InvalidArgument, "no runner " + o.runner + " in " + o.frames);
  print_summary({{"command", "replay"}, {"frames", rows}, {"out", o.out}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pre-live horse racing trading research pipeline"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Write synthetic market files");
  add_common(generate, o);
  generate->add_option("--count", o.count, "Number of markets")->check(CLI::PositiveNumber);

  auto* ingest = app.add_subcommand("ingest", "Validate and align raw market files into canonical files");
  add_common(ingest, o);
  ingest->add_option("--frames", o.frames, "Directory of market files")->required();

  auto* featurize_cmd = app.add_subcommand("featurize", "Build per-category datasets and normalization");
  add_common(featurize_cmd, o);
  featurize_cmd->add_option("--frames", o.frames, "Directory of market files")->required();

  auto* train_cmd = app.add_subcommand("train", "Train one model per category");
  add_common(train_cmd, o);
  train_cmd->add_option("--data", o.data, "Featurized directory")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Confusion matrices on the validation split");
  add_common(evaluate, o);
  evaluate->add_option("--data", o.data, "Featurized directory")->required();
  evaluate->add_option("--model", o.model, "Model bundle")->required();
  evaluate->add_option("--reference-accuracy", o.reference_accuracy, "Accuracy (percent) to compare against");

  auto* simulate_cmd = app.add_subcommand("simulate", "Trade every runner and write the trade log and PL curve");
  add_common(simulate_cmd, o);
  simulate_cmd->add_option("--frames", o.frames, "Directory of market files")->required();
  simulate_cmd->add_option("--model", o.model, "Model bundle");
  simulate_cmd->add_option("--stub", o.stub, "Use a constant model predicting this class (0-4)")->check(CLI::Range(0, 4));

  auto* replay = app.add_subcommand("replay", "Frame-by-frame book reconstruction of one market file");
  add_common(replay, o);
  replay->add_option("--frames", o.frames, "Market file")->required();
  replay->add_option("--runner", o.runner, "Only this runner");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (o.quiet) {
    set_log_sink([](LogLevel level, const std::string& message) {
      if (level != LogLevel::Info) std::cerr << message << '\n';
    });
  }

  try {
    if (generate->parsed()) return run_generate(o);
    if (ingest->parsed()) return run_ingest(o);
    if (featurize_cmd->parsed()) return run_featurize(o);
    if (train_cmd->parsed()) return run_train(o);
    if (evaluate->parsed()) return run_evaluate(o);
    if (simulate_cmd->parsed()) return run_simulate(o);
    if (replay->parsed()) return run_replay(o);
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 3;
  }
  return 1;
}
