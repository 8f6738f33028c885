#include "remedysim/types.hpp"

#include <charconv>

namespace remedysim {

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("malformed fraction '" + whole + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(parse_int(text, text), 1);
  } else {
    r = Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (r.den <= 0) throw std::invalid_argument("fraction denominator must be positive in '" + text + "'");
  return r;
}

}  // namespace remedysim
