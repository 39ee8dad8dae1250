#include "exo/log.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <mutex>

namespace exo::log {

namespace {

Level parse_level(const char* s) {
  if (s == nullptr || *s == '\0') return Level::warn;
  if (std::strcmp(s, "error") == 0 || std::strcmp(s, "0") == 0) return Level::error;
  if (std::strcmp(s, "warn") == 0 || std::strcmp(s, "1") == 0) return Level::warn;
  if (std::strcmp(s, "info") == 0 || std::strcmp(s, "2") == 0) return Level::info;
  if (std::strcmp(s, "debug") == 0 || std::strcmp(s, "3") == 0) return Level::debug;
  return Level::warn;
}

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
  }
  return "?";
}

std::mutex g_mutex;

}  // namespace

Level level() {
  static const Level lvl = parse_level(std::getenv("EXO_LOG_LEVEL"));
  return lvl;
}

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(level()); }

void write(Level lvl, const std::string& msg) {
  if (!enabled(lvl)) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << "[exo:" << tag(lvl) << "] " << msg << "\n";
}

}  // namespace exo::log
