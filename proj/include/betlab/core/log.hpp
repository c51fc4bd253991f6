#pragma once

#include <functional>
#include <string>

namespace betlab {

enum class LogLevel { Info, Warning, Error };

using LogSink = std::function<void(LogLevel, const std::string&)>;

// Replaces the process-wide sink (stderr by default); returns the old one.
LogSink set_log_sink(LogSink sink);
void log_message(LogLevel level, const std::string& text);
inline void log_info(const std::string& text) { log_message(LogLevel::Info, text); }
inline void log_warning(const std::string& text) { log_message(LogLevel::Warning, text); }
inline void log_error(const std::string& text) { log_message(LogLevel::Error, text); }

}  // namespace betlab
