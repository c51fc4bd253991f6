#include "betlab/core/log.hpp"

#include <iostream>
#include <mutex>

namespace betlab {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void default_sink(LogLevel level, const std::string& text) {
  static const char* names[] = {"info", "warning", "error"};
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << text << '\n';
}

LogSink& current_sink() {
  static LogSink sink = default_sink;
  return sink;
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
  std::lock_guard lock(sink_mutex());
  LogSink old = std::move(current_sink());
  current_sink() = sink ? std::move(sink) : LogSink(default_sink);
  return old;
}

void log_message(LogLevel level, const std::string& text) {
  std::lock_guard lock(sink_mutex());
  current_sink()(level, text);
}

}  // namespace betlab
