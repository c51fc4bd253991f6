#include "betlab/features/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "betlab/core/error.hpp"

namespace betlab {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

void write_examples(std::ostream& out, const std::vector<Example>& examples) {
  for (const auto& ex : examples) {
    out << ex.race_id << '\t' << ex.runner_id << '\t' << ex.category << '\t' << format_double(ex.target) << '\t'
        << ex.label << '\t' << ex.max_variation << '\t';
    for (std::size_t i = 0; i < ex.inputs.data.size(); ++i) {
      if (i) out << ',';
      out << format_double(ex.inputs.data[i]);
    }
    out << '\n';
  }
}

std::vector<Example> read_examples(std::istream& in) {
  std::vector<Example> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 7)
      fail(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected 7 fields, got " +
                                      std::to_string(fields.size()));
    Example ex;
    ex.race_id = fields[0];
    ex.runner_id = fields[1];
    ex.category = parse_number<int>(fields[2], number);
    ex.target = parse_number<double>(fields[3], number);
    ex.label = parse_number<int>(fields[4], number);
    ex.max_variation = parse_number<int>(fields[5], number);
    const auto values = split(fields[6], ',');
    if (values.size() != kTimeSteps * kVariables)
      fail(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected 1152 inputs");
    for (std::size_t i = 0; i < values.size(); ++i) ex.inputs.data[i] = parse_number<double>(values[i], number);
    out.push_back(std::move(ex));
  }
  return out;
}

void save_examples(const std::filesystem::path& path, const std::vector<Example>& examples) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  write_examples(out, examples);
}

std::vector<Example> load_examples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
  return read_examples(in);
}

}  // namespace betlab
