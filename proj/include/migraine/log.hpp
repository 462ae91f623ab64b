#pragma once

#include <functional>
#include <string_view>

// Process-wide diagnostic sink. Defaults to "[level] message" on stderr.
namespace migraine::log {

enum class Level { debug, info, warn, error };

using Sink = std::function<void(Level, std::string_view)>;

void set_sink(Sink sink);
void set_min_level(Level level);

void write(Level level, std::string_view message);
inline void info(std::string_view m) { write(Level::info, m); }
inline void warn(std::string_view m) { write(Level::warn, m); }
inline void error(std::string_view m) { write(Level::error, m); }

const char* to_string(Level level);

}  // namespace migraine::log
