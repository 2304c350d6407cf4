#pragma once

#include <string>

namespace qverify {

// Radians from "0.3927", "pi", "pi/8", "3pi/8", "3*pi/8", "-pi/4" or "0.5*pi".
// ParseError on anything else.
double parse_angle(const std::string& text);

// Caps OpenMP threads from QVERIFY_THREADS when set to a positive integer.
// Returns the cap applied, or 0.
int apply_thread_cap_from_env();
int max_threads();

}  // namespace qverify
