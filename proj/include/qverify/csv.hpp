#pragma once

// Shortest round-trip text for reals, so that tables are byte-stable.

#include <charconv>
#include <cstdint>
#include <string>

namespace qverify {

inline std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t x) { return std::to_string(x); }

}  // namespace qverify
