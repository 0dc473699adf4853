#include <doctest.h>

#include <algorithm>
#include <limits>
#include <vector>

#include "growthbound/error.hpp"
#include "growthbound/exponent.hpp"

using namespace growthbound;

TEST_CASE("parse_exponent notation") {
  const auto a = parse_exponent("7/3+");
  CHECK(a.numerator() == 7);
  CHECK(a.denominator() == 3);
  CHECK(a.strict());

  const auto b = parse_exponent("2");
  CHECK(b == RationalExponent(2, 1, false));

  const auto c = parse_exponent("14/6");
  CHECK(c.numerator() == 7);
  CHECK(c.denominator() == 3);
  CHECK_FALSE(c.strict());
  CHECK(c.to_string() == "7/3");
  CHECK(parse_exponent("3/2+").to_string() == "3/2+");
}

TEST_CASE("parse_exponent errors are distinguishable") {
  const auto kind_of = [](const char* text) {
    try {
      parse_exponent(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("no error for " << text);
    return ParseErrorKind::Malformed;
  };
  CHECK(kind_of("") == ParseErrorKind::Malformed);
  CHECK(kind_of("7/") == ParseErrorKind::Malformed);
  CHECK(kind_of("a/3") == ParseErrorKind::Malformed);
  CHECK(kind_of("7/3++") == ParseErrorKind::Malformed);
  CHECK(kind_of("-2") == ParseErrorKind::Malformed);
  CHECK(kind_of("3/4") == ParseErrorKind::BelowOne);
  CHECK(kind_of("0") == ParseErrorKind::BelowOne);
  CHECK(kind_of("7/0") == ParseErrorKind::ZeroDenominator);
}

TEST_CASE("ordering puts beta+ between beta and larger rationals") {
  const RationalExponent beta(7, 3), plus(7, 3, true), larger(12, 5);
  CHECK(beta < plus);
  CHECK(plus < larger);
  CHECK(RationalExponent(14, 6) == beta);
  CHECK(RationalExponent(14, 6, true) != beta);
}

TEST_CASE("forbidden_length examples") {
  CHECK(forbidden_length(RationalExponent(3, 1), 1) == 3);
  CHECK(forbidden_length(RationalExponent(2, 1, true), 1) == 3);
  CHECK(forbidden_length(RationalExponent(7, 3), 3) == 7);
  CHECK(forbidden_length(RationalExponent(7, 3, true), 3) == 8);
  CHECK(forbidden_length(RationalExponent(2, 1), 3) == 6);
  CHECK_THROWS_AS(forbidden_length(RationalExponent(2, 1), 0), std::invalid_argument);
  CHECK_THROWS_AS(forbidden_length(RationalExponent(std::numeric_limits<std::uint64_t>::max() / 2, 1), 3),
                  std::overflow_error);
}

namespace {

std::vector<RationalExponent> exponent_grid(std::uint64_t max_den, std::uint64_t max_ratio) {
  std::vector<RationalExponent> out;
  for (std::uint64_t b = 1; b <= max_den; ++b)
    for (std::uint64_t a = b; a <= max_ratio * b; ++a)
      for (bool s : {false, true}) out.emplace_back(a, b, s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("forbidden_length is the exact threshold and nondecreasing") {
  for (const auto& e : exponent_grid(10, 15)) {
    const std::uint64_t a = e.numerator(), b = e.denominator();
    std::uint64_t prev = 0;
    for (std::uint64_t p = 1; p <= 10'000; p += (p < 200 ? 1 : 97)) {
      const std::uint64_t n = forbidden_length(e, p);
      if (e.strict()) {
        REQUIRE(n * b > a * p);
        REQUIRE((n - 1) * b <= a * p);
      } else {
        REQUIRE(n * b >= a * p);
        REQUIRE((n - 1) * b < a * p);
      }
      REQUIRE(n >= prev);
      prev = n;
    }
  }
}

TEST_CASE("classify follows the repetition threshold") {
  CHECK(classify(3, RationalExponent(7, 4)) == Finiteness::Finite);
  CHECK(classify(3, RationalExponent(7, 4, true)) == Finiteness::Infinite);
  CHECK(classify(2, RationalExponent(2, 1, true)) == Finiteness::Infinite);
  CHECK(classify(2, RationalExponent(2, 1)) == Finiteness::Finite);
  CHECK(classify(4, RationalExponent(7, 5)) == Finiteness::Finite);
  CHECK(classify(4, RationalExponent(7, 5, true)) == Finiteness::Infinite);
  CHECK(classify(5, RationalExponent(5, 4)) == Finiteness::Finite);
  CHECK(classify(5, RationalExponent(5, 4, true)) == Finiteness::Infinite);
  CHECK(classify(15, RationalExponent(15, 14, true)) == Finiteness::Infinite);
  CHECK(classify(15, RationalExponent(15, 14)) == Finiteness::Finite);
  CHECK_THROWS_AS(classify(1, RationalExponent(2, 1)), std::invalid_argument);
}

TEST_CASE("classify is monotone in the exponent") {
  const auto grid = exponent_grid(8, 3);
  for (int k = 2; k <= 15; ++k) {
    bool seen_infinite = false;
    for (const auto& e : grid) {
      const bool inf = classify(k, e) == Finiteness::Infinite;
      REQUIRE_FALSE((seen_infinite && !inf));
      seen_infinite = seen_infinite || inf;
    }
    CHECK(seen_infinite);
  }
}

TEST_CASE("TaskSpec validation and key") {
  TaskSpec s;
  s.alphabet_size = 3;
  s.exponent = parse_exponent("7/4+");
  s.period_cap = 5;
  s.symmetry = true;
  CHECK_NOTHROW(s.validate());
  CHECK(s.key() == "3/7/4/1/5/1");
  s.period_cap = 0;
  CHECK_THROWS(s.validate());
  s.period_cap = 1;
  s.precision = 0;
  CHECK_THROWS(s.validate());
  s.precision = 1e-9;
  s.alphabet_size = 1;
  CHECK_THROWS(s.validate());
}
