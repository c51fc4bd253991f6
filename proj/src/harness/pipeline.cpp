#include "betlab/harness/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "betlab/core/error.hpp"
#include "betlab/core/log.hpp"
#include "betlab/features/example.hpp"
#include "betlab/features/labels.hpp"
#include "betlab/harness/simulate.hpp"
#include "betlab/ladder/frame_io.hpp"

namespace betlab {

namespace fs = std::filesystem;

std::vector<Market> load_markets(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorCode::IoError, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Market> out;
  for (const auto& f : files) out.push_back(load_market(f.string()));
  return out;
}

void save_markets(const fs::path& dir, const std::vector<Market>& markets) {
  fs::create_directories(dir);
  for (const auto& m : markets) save_market((dir / (m.market_id + ".tsv")).string(), m);
}

std::vector<Example> extract_examples(const std::vector<Market>& markets, const RunConfig& config,
                                      const CategoryThresholds& thresholds) {
  std::vector<const Market*> order;
  for (const auto& m : markets) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(), [](const Market* a, const Market* b) { return a->start_ms < b->start_ms; });
  std::vector<Example> out;
  for (const Market* m : order) {
    const Market aligned = align_runners(*m);
    std::size_t frame = 0;
    try {
      frame = prediction_frame(aligned, config);
    } catch (const Error& e) {
      log_warning(e.what());
      continue;
    }
    for (std::size_t r = 0; r < aligned.runners.size(); ++r) {
      const auto& frames = aligned.runners[r].frames;
      if (!frames[frame - 1].last_traded) continue;
      if (frames.size() - frame < kTargetFrames) {
        log_warning(m->market_id + "/" + aligned.runners[r].runner_id + ": fewer than 240 frames after prediction");
        continue;
      }
      const CategoryKey key = categorize(aligned, r, frame - 1, thresholds);
      Example ex;
      ex.race_id = m->market_id;
      ex.runner_id = aligned.runners[r].runner_id;
      ex.category = category_index(key);
      if (config.category && *config.category != ex.category) continue;
      ex.inputs = build_example(aligned, r, frame, wom_depth(key.price));
      const FrameSpan after(frames.data() + frame, frames.size() - frame);
      ex.target = target_integral(after);
      ex.max_variation = max_tick_variation(after);
      out.push_back(std::move(ex));
    }
  }
  return out;
}

FeatureSet prepare_categories(const std::vector<Example>& examples, const CategoryThresholds& thresholds,
                              const RunConfig& config) {
  std::map<int, std::vector<Example>> groups;
  for (const auto& e : examples) groups[e.category].push_back(e);
  FeatureSet set;
  set.thresholds = thresholds;
  for (auto& [index, group] : groups) {
    if (group.size() < config.min_category_examples) {
      log_info("category " + std::to_string(index) + ": " + std::to_string(group.size()) +
               " examples, below the minimum of " + std::to_string(config.min_category_examples));
      continue;
    }
    CategoryData d;
    const auto n_train = std::max<std::size_t>(
        1, static_cast<std::size_t>(config.train_fraction * static_cast<double>(group.size())));
    d.train.assign(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(n_train));
    d.validation.assign(group.begin() + static_cast<std::ptrdiff_t>(n_train), group.end());

    std::vector<double> targets;
    for (const auto& e : d.train) targets.push_back(e.target);
    const QuintileLabels q = label_by_quintiles(targets);
    d.boundaries = q.boundaries;
    std::array<double, kMovementClasses> sum{};
    std::array<int, kMovementClasses> count{};
    for (std::size_t i = 0; i < d.train.size(); ++i) {
      d.train[i].label = q.labels[i];
      sum[q.labels[i]] += d.train[i].max_variation;
      ++count[q.labels[i]];
    }
    for (int k = 0; k < kMovementClasses; ++k)
      if (count[k] > 0) d.stats.mean_max_variation[k] = sum[k] / count[k];
    for (auto& e : d.validation) e.label = class_for(e.target, d.boundaries);

    std::vector<FeatureMatrix> inputs;
    for (const auto& e : d.train) inputs.push_back(e.inputs);
    d.normalization = fit_normalization(inputs);
    for (auto& e : d.train) d.normalization.apply(e.inputs);
    for (auto& e : d.validation) d.normalization.apply(e.inputs);
    set.categories[index] = std::move(d);
  }
  return set;
}

FeatureSet featurize(const std::vector<Market>& markets, const RunConfig& config) {
  CategoryThresholds thresholds = config.thresholds;
  if (config.fit_liquidity) {
    std::vector<double> volumes;
    for (const auto& m : markets) {
      const Market aligned = align_runners(m);
      std::size_t frame = 0;
      try {
        frame = prediction_frame(aligned, config);
      } catch (const Error&) {
        continue;
      }
      for (const auto& r : aligned.runners) volumes.push_back(r.frames[frame - 1].traded_total().as_double());
    }
    fit_liquidity_terciles(volumes, thresholds);
  }
  return prepare_categories(extract_examples(markets, config, thresholds), thresholds, config);
}

namespace {

nlohmann::json thresholds_json(const CategoryThresholds& t) {
  return {{"few_runners_max", t.few_runners_max},     {"medium_runners_max", t.medium_runners_max},
          {"low_price_max", t.low_price_max},         {"medium_price_max", t.medium_price_max},
          {"low_liquidity_max", t.low_liquidity_max}, {"medium_liquidity_max", t.medium_liquidity_max}};
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorCode::IoError, "cannot open " + p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, p.string() + ": " + e.what());
  }
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  std::ofstream out(p);
  if (!out) fail(ErrorCode::IoError, "cannot write " + p.string());
  out << j.dump(2) << '\n';
}

}  // namespace

void save_feature_set(const fs::path& dir, const FeatureSet& set) {
  fs::create_directories(dir);
  write_json(dir / "thresholds.json", thresholds_json(set.thresholds));
  for (const auto& [index, d] : set.categories) {
    const fs::path sub = dir / std::to_string(index);
    fs::create_directories(sub);
    save_examples(sub / "train.tsv", d.train);
    save_examples(sub / "validation.tsv", d.validation);
    nlohmann::json meta;
    meta["path"] = category_path(category_from_index(index));
    meta["normalization"] = nlohmann::json::parse(to_json(d.normalization));
    meta["boundaries"] = d.boundaries;
    for (const auto& m : d.stats.mean_max_variation) meta["class_means"].push_back(m ? nlohmann::json(*m) : nlohmann::json());
    write_json(sub / "meta.json", meta);
  }
}

FeatureSet load_feature_set(const fs::path& dir) {
  FeatureSet set;
  try {
    const auto t = read_json(dir / "thresholds.json");
    set.thresholds.few_runners_max = t.at("few_runners_max").get<int>();
    set.thresholds.medium_runners_max = t.at("medium_runners_max").get<int>();
    set.thresholds.low_price_max = t.at("low_price_max").get<double>();
    set.thresholds.medium_price_max = t.at("medium_price_max").get<double>();
    set.thresholds.low_liquidity_max = t.at("low_liquidity_max").get<double>();
    set.thresholds.medium_liquidity_max = t.at("medium_liquidity_max").get<double>();
    std::vector<fs::path> subs;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_directory()) subs.push_back(e.path());
    std::sort(subs.begin(), subs.end());
    for (const auto& sub : subs) {
      const int index = std::stoi(sub.filename().string());
      category_from_index(index);
      CategoryData d;
      d.train = load_examples(sub / "train.tsv");
      d.validation = load_examples(sub / "validation.tsv");
      const auto meta = read_json(sub / "meta.json");
      d.normalization = normalization_from_json(meta.at("normalization").dump());
      d.boundaries = meta.at("boundaries").get<std::array<double, 4>>();
      const auto& means = meta.at("class_means");
      for (int k = 0; k < kMovementClasses && k < static_cast<int>(means.size()); ++k)
        if (!means[k].is_null()) d.stats.mean_max_variation[k] = means[k].get<double>();
      set.categories[index] = std::move(d);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, dir.string() + ": " + e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, dir.string() + ": unexpected entry");
  }
  return set;
}

nn::Dataset to_dataset(const std::vector<Example>& examples) {
  nn::Dataset d;
  for (const auto& e : examples) {
    d.inputs.emplace_back(nn::Shape{e.inputs.rows, e.inputs.cols}, e.inputs.data);
    d.labels.push_back(e.label);
  }
  return d;
}

ModelBundle train_bundle(const FeatureSet& set, const RunConfig& config, std::vector<TrainLogEntry>* log) {
  ModelBundle bundle;
  bundle.thresholds = set.thresholds;
  for (const auto& [index, d] : set.categories) {
    if (config.category && *config.category != index) continue;
    nlohmann::json model_config = config.model_config;
    if (!model_config.contains("seed")) model_config["seed"] = config.seed + static_cast<std::uint64_t>(index);
    auto model = nn::make_classifier(config.model_kind, model_config);
    nn::TrainConfig tc = config.train;
    tc.seed = config.seed + static_cast<std::uint64_t>(index);
    tc.on_epoch = [&, index = index](std::size_t epoch, double loss, double acc) {
      log_info("category " + std::to_string(index) + " epoch " + std::to_string(epoch) + " loss " + std::to_string(loss));
      if (log) log->push_back({index, epoch, loss, acc});
    };
    nn::train(*model, to_dataset(d.train), tc);
    CategoryModel m;
    m.classifier = std::shared_ptr<const nn::Classifier>(std::move(model));
    m.normalization = d.normalization;
    m.boundaries = d.boundaries;
    m.stats = d.stats;
    bundle.categories[index] = std::move(m);
  }
  return bundle;
}

Evaluation evaluate_bundle(const ModelBundle& bundle, const FeatureSet& set, const RunConfig& config) {
  Evaluation ev;
  for (const auto& [index, d] : set.categories) {
    if (config.category && *config.category != index) continue;
    const CategoryModel* m = bundle.find(index);
    if (!m) fail(ErrorCode::MissingCategoryModel, "no model for category " + std::to_string(index));
    ConfusionMatrix cm;
    for (const auto& e : d.validation) {
      const nn::Tensor x(nn::Shape{e.inputs.rows, e.inputs.cols}, e.inputs.data);
      cm.add(e.label, m->classifier->predict(x));
    }
    ev.overall += cm;
    ev.categories[index] = cm;
  }
  return ev;
}

nlohmann::json evaluation_json(const Evaluation& e, std::optional<double> reference_accuracy) {
  nlohmann::json j;
  j["overall"] = metrics_json(e.overall, reference_accuracy);
  for (const auto& [index, cm] : e.categories) {
    auto c = metrics_json(cm);
    c["path"] = category_path(category_from_index(index));
    j["categories"][std::to_string(index)] = std::move(c);
  }
  return j;
}

}  // namespace betlab
