#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace remedysim {

// Integer minor currency units.
using Money = std::int64_t;
using Round = std::int32_t;

template <class Tag>
struct Id {
  std::string value;

  Id() = default;
  explicit Id(std::string v) : value(std::move(v)) {}

  auto operator<=>(const Id&) const = default;
  bool operator==(const Id&) const = default;
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Id<Tag>& id) {
  return os << id.value;
}

struct AgentTag {};
struct GoodTag {};
using AgentId = Id<AgentTag>;
using GoodId = Id<GoodTag>;

// Exact non-negative fraction num/den, used for policy coefficients and
// party-designed damage fractions.
struct Rational {
  std::int64_t num{0};
  std::int64_t den{1};

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {}

  bool in_unit_interval() const noexcept { return den > 0 && num >= 0 && num <= den; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num * b.den == b.num * a.den;
  }
};

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

// floor(a / b) for b > 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

// round-half-up(r * x), the conversion used wherever a fraction meets money.
constexpr Money scale_round_half_up(const Rational& r, Money x) {
  return floor_div(2 * r.num * x + r.den, 2 * r.den);
}

// Strict comparison lhs > r * rhs without leaving integer arithmetic.
constexpr bool exceeds_fraction_of(Money lhs, const Rational& r, Money rhs) {
  return lhs * r.den > r.num * rhs;
}

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace remedysim

template <class Tag>
struct std::hash<remedysim::Id<Tag>> {
  std::size_t operator()(const remedysim::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
