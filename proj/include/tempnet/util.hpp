#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tempnet/error.hpp"

namespace tempnet {

// Locale-independent "%.6g" (C locale is never changed by this library).
inline std::string fmt_g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline double parse_double(std::string_view s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw InvalidParams("trailing characters in number '" + std::string(s) + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidParams("expected a number, got '" + std::string(s) + "'");
  }
}

inline std::uint64_t parse_u64(std::string_view s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(std::string(s), &used);
    if (used != s.size()) throw InvalidParams("trailing characters in integer '" + std::string(s) + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidParams("expected an integer, got '" + std::string(s) + "'");
  }
}

// Runs fn(i) for i in [0, count) on up to nthreads workers. Work items must
// be independent; results should be written to pre-sized slots so output
// order stays deterministic.
inline void parallel_for(std::size_t count, unsigned nthreads,
                         const std::function<void(std::size_t)>& fn) {
  if (nthreads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  const unsigned used = std::min<std::size_t>(nthreads, count);
  std::vector<std::exception_ptr> errors(used);
  for (unsigned t = 0; t < used; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += used) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tempnet
