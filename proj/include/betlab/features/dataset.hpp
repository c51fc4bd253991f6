#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "betlab/features/example.hpp"

namespace betlab {

struct Example {
  std::string race_id;
  std::string runner_id;
  int category = 0;
  FeatureMatrix inputs;
  double target = 0.0;
  int label = 0;
  int max_variation = 0;  // signed largest tick excursion over the target window

  friend bool operator==(const Example&, const Example&) = default;
};

// One record per line, tab separated:
//   race  runner  category  target  label  max_variation  v0,v1,...,v1151
void write_examples(std::ostream& out, const std::vector<Example>& examples);
std::vector<Example> read_examples(std::istream& in);
void save_examples(const std::filesystem::path& path, const std::vector<Example>& examples);
std::vector<Example> load_examples(const std::filesystem::path& path);

}  // namespace betlab
