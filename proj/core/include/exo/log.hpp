#pragma once

#include <string>

namespace exo::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

/// Current verbosity, read once from the EXO_LOG_LEVEL environment variable
/// ("error", "warn", "info", "debug" or 0-3). Defaults to warn.
Level level();

bool enabled(Level lvl);

/// Writes one line to stderr if `lvl` is enabled.
void write(Level lvl, const std::string& msg);

inline void error(const std::string& msg) { write(Level::error, msg); }
inline void warn(const std::string& msg) { write(Level::warn, msg); }
inline void info(const std::string& msg) { write(Level::info, msg); }
inline void debug(const std::string& msg) { write(Level::debug, msg); }

}  // namespace exo::log
