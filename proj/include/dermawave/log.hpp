#pragma once

#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <string>

namespace dermawave {

using WarningHandler = std::function<void(const std::string&)>;

namespace detail {

struct WarningState {
  std::mutex mutex;
  WarningHandler handler = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  std::set<std::string> seen;
};

inline WarningState& warning_state() {
  static WarningState state;
  return state;
}

}  // namespace detail

// Replaces the warning sink; returns the previous one. Passing an empty
// function silences warnings.
inline WarningHandler set_warning_handler(WarningHandler handler) {
  auto& s = detail::warning_state();
  std::lock_guard lock(s.mutex);
  std::swap(s.handler, handler);
  s.seen.clear();
  return handler;
}

inline void warn(const std::string& msg) {
  auto& s = detail::warning_state();
  std::lock_guard lock(s.mutex);
  if (s.handler) s.handler(msg);
}

// Emits each distinct message once per handler installation.
inline void warn_once(const std::string& msg) {
  auto& s = detail::warning_state();
  std::lock_guard lock(s.mutex);
  if (!s.seen.insert(msg).second) return;
  if (s.handler) s.handler(msg);
}

}  // namespace dermawave
