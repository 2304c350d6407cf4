#include "qverify/util.hpp"

#include <charconv>
#include <cstdlib>
#include <numbers>
#include <regex>

#include <omp.h>

#include "qverify/error.hpp"

namespace qverify {

namespace {

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

double parse_angle(const std::string& text) {
  double v = 0.0;
  if (parse_number(text, v)) return v;
  static const std::regex re(R"(\s*([+-]?)([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) fail(ErrorCode::ParseError, "cannot parse angle '" + text + "'");
  double coef = 1.0;
  if (m[2].length() > 0 && !parse_number(m[2], coef)) fail(ErrorCode::ParseError, "cannot parse angle '" + text + "'");
  double den = 1.0;
  if (m[3].matched && (!parse_number(m[3], den) || den == 0.0)) fail(ErrorCode::ParseError, "bad denominator in '" + text + "'");
  const double sign = m[1] == "-" ? -1.0 : 1.0;
  return sign * coef * std::numbers::pi / den;
}

int apply_thread_cap_from_env() {
  const char* env = std::getenv("QVERIFY_THREADS");
  if (!env) return 0;
  int n = 0;
  const std::string s(env);
  auto res = std::from_chars(s.data(), s.data() + s.size(), n);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || n < 1) return 0;
  omp_set_num_threads(n);
  return n;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace qverify
