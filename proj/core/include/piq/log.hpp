#pragma once

#include <sstream>

namespace piq::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Threshold comes from the PIQ_LOG environment variable
// (error|warn|info|debug), default warn.
Level threshold();
void set_threshold(Level level);
void write(Level level, const std::string& message);

namespace detail {
template <typename... Args>
void emit(Level level, const Args&... args) {
  if (level > threshold()) return;
  std::ostringstream os;
  (os << ... << args);
  write(level, os.str());
}
}  // namespace detail

template <typename... Args>
void error(const Args&... args) {
  detail::emit(Level::Error, args...);
}
template <typename... Args>
void warn(const Args&... args) {
  detail::emit(Level::Warn, args...);
}
template <typename... Args>
void info(const Args&... args) {
  detail::emit(Level::Info, args...);
}
template <typename... Args>
void debug(const Args&... args) {
  detail::emit(Level::Debug, args...);
}

}  // namespace piq::log
