#pragma once

#include <atomic>
#include <cstdio>
#include <string>

namespace aapdhg {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

inline std::atomic<int>& log_level_slot() {
  static std::atomic<int> level{static_cast<int>(LogLevel::kWarn)};
  return level;
}

inline void set_log_level(LogLevel level) {
  log_level_slot().store(static_cast<int>(level));
}

inline void log_msg(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) > log_level_slot().load()) return;
  const char* tag = "error";
  switch (level) {
    case LogLevel::kError: tag = "error"; break;
    case LogLevel::kWarn: tag = "warn"; break;
    case LogLevel::kInfo: tag = "info"; break;
    case LogLevel::kDebug: tag = "debug"; break;
  }
  std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}

inline void log_warn(const std::string& msg) { log_msg(LogLevel::kWarn, msg); }
inline void log_info(const std::string& msg) { log_msg(LogLevel::kInfo, msg); }
inline void log_debug(const std::string& msg) { log_msg(LogLevel::kDebug, msg); }

}  // namespace aapdhg
