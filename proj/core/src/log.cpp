#include "piq/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace piq::log {

namespace {

Level parse_env() {
  const char* env = std::getenv("PIQ_LOG");
  if (!env) return Level::Warn;
  if (std::strcmp(env, "error") == 0) return Level::Error;
  if (std::strcmp(env, "warn") == 0) return Level::Warn;
  if (std::strcmp(env, "info") == 0) return Level::Info;
  if (std::strcmp(env, "debug") == 0) return Level::Debug;
  return Level::Warn;
}

Level g_threshold = parse_env();
std::mutex g_mutex;

const char* tag(Level level) {
  switch (level) {
    case Level::Error: return "error";
    case Level::Warn: return "warn";
    case Level::Info: return "info";
    case Level::Debug: return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() { return g_threshold; }

void set_threshold(Level level) { g_threshold = level; }

void write(Level level, const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[piq %s] %s\n", tag(level), message.c_str());
}

}  // namespace piq::log
