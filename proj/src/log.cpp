#include "migraine/log.hpp"

#include <iostream>
#include <mutex>

namespace migraine::log {

namespace {
std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}
Sink& current_sink() {
  static Sink sink = [](Level level, std::string_view msg) {
    std::cerr << '[' << to_string(level) << "] " << msg << '\n';
  };
  return sink;
}
Level& min_level() {
  static Level level = Level::info;
  return level;
}
}  // namespace

const char* to_string(Level level) {
  switch (level) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
  }
  return "?";
}

void set_sink(Sink sink) {
  std::lock_guard lock(sink_mutex());
  current_sink() = std::move(sink);
}

void set_min_level(Level level) {
  std::lock_guard lock(sink_mutex());
  min_level() = level;
}

void write(Level level, std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (level < min_level() || !current_sink()) return;
  current_sink()(level, message);
}

}  // namespace migraine::log
