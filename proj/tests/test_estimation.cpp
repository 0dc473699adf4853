#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "growthbound/estimation.hpp"

using namespace growthbound;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

cpp_rational exact_decimal(const std::string& text) {
  const auto dot = text.find('.');
  std::string digits = text;
  std::size_t places = 0;
  if (dot != std::string::npos) {
    digits.erase(dot, 1);
    places = text.size() - dot - 1;
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  cpp_int den = 1;
  for (std::size_t i = 0; i < places; ++i) den *= 10;
  return cpp_rational(cpp_int(digits), den);
}

}  // namespace

TEST_CASE("format_decimal directed rounding") {
  CHECK(format_decimal(1.6180339887, 7, Rounding::Down) == "1.6180339");
  CHECK(format_decimal(1.6180339887, 7, Rounding::Up) == "1.6180340");
  CHECK(format_decimal(1.6180339887, 7, Rounding::Nearest) == "1.6180340");
  CHECK(format_decimal(2.0, 7, Rounding::Up) == "2.0000000");
  CHECK(format_decimal(2.0, 7, Rounding::Down) == "2.0000000");
  // 0.1 is slightly above one tenth in binary.
  CHECK(format_decimal(0.1, 7, Rounding::Down) == "0.1000000");
  CHECK(format_decimal(0.1, 7, Rounding::Up) == "0.1000001");
  CHECK(format_decimal(9.99999999, 7, Rounding::Up) == "10.0000000");
  CHECK(format_decimal(1.25, 1, Rounding::Nearest) == "1.2");
  CHECK(format_decimal(1.25, 1, Rounding::Up) == "1.3");
  CHECK(format_decimal(0.0, 7, Rounding::Up) == "0.0000000");
  CHECK(format_decimal(-1.5, 0, Rounding::Down) == "-2");
  CHECK(format_decimal(-1.5, 0, Rounding::Up) == "-1");
  CHECK_THROWS(format_decimal(NAN, 7, Rounding::Up));
}

TEST_CASE("displayed bounds never cut into the enclosure") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(0.0, 16.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = i < 10 ? static_cast<double>(i) : dist(rng);
    const cpp_rational exact(x);
    REQUIRE(exact_decimal(format_decimal(x, 7, Rounding::Down)) <= exact);
    REQUIRE(exact_decimal(format_decimal(x, 7, Rounding::Up)) >= exact);
    REQUIRE(exact_decimal(format_decimal(x, 7, Rounding::Up)) - exact_decimal(format_decimal(x, 7, Rounding::Down)) <=
            cpp_rational(1, 10'000'000));
  }
}

TEST_CASE("aitken is exact on geometric sequences") {
  const double a = 1.3, c = 0.05, q = 0.5;
  const auto est = aitken(a + c * q, a + c * q * q, a + c * q * q * q);
  REQUIRE(est);
  CHECK(std::fabs(*est - 1.3) <= 1e-12);
  CHECK_FALSE(aitken(1.7, 1.7, 1.7));

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> lim(1.0, 15.0), amp(-0.5, 0.5), ratio(0.1, 0.9);
  for (int i = 0; i < 1000; ++i) {
    const double L = lim(rng), C = amp(rng), Q = ratio(rng);
    if (std::fabs(C) < 1e-3) continue;
    const auto e = aitken(L + C * Q, L + C * Q * Q, L + C * Q * Q * Q);
    REQUIRE(e);
    REQUIRE(std::fabs(*e - L) <= 1e-10 * L);
  }
}

TEST_CASE("jump_interval") {
  const Enclosure beta{1.0, 1.0};
  const Enclosure plus{1.2206318, 1.2206448};
  const Enclosure j = jump_interval(beta, plus);
  CHECK(j.lo == doctest::Approx(0.2206318).epsilon(1e-12));
  CHECK(j.hi == doctest::Approx(0.2206448).epsilon(1e-12));

  const Enclosure same = jump_interval(plus, plus);
  CHECK(same.contains(0.0));
  // Clamped below at zero.
  const Enclosure clamped = jump_interval(Enclosure{1.5, 1.6}, Enclosure{1.0, 1.2});
  CHECK(clamped.lo == 0.0);
  CHECK(clamped.hi == 0.0);

  GrowthRecord a, b;
  a.spec.alphabet_size = b.spec.alphabet_size = 2;
  a.spec.exponent = RationalExponent(5, 2);
  b.spec.exponent = RationalExponent(5, 2, true);
  a.enclosure = {1.2294871, 1.2295017};
  b.enclosure = {1.3662971, 1.3663011};
  const Enclosure j52 = jump_interval(a, b);
  CHECK(j52.contains(0.1368));
  CHECK_THROWS(jump_interval(b, a));
  b.spec.alphabet_size = 3;
  CHECK_THROWS(jump_interval(a, b));
  b.spec.alphabet_size = 2;
  b.spec.exponent = RationalExponent(8, 3, true);
  CHECK_THROWS(jump_interval(a, b));
}

TEST_CASE("run_series: golden ratio, single record") {
  const SeriesResult s = run_series(2, RationalExponent(3, 1), 1, 1);
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].enclosure.contains((1 + std::sqrt(5.0)) / 2));
  CHECK(s.records[0].display_hi == "1.6180340");
  CHECK(s.records[0].display_lo == "1.6180339");
  CHECK_FALSE(s.estimate);
  CHECK_FALSE(s.records[0].estimate);
  CHECK_FALSE(s.finite);
}

TEST_CASE("run_series: binary 7/3+ decreases and stays above the published lower bound") {
  const SeriesResult s = run_series(2, RationalExponent(7, 3, true), 1, 6);
  REQUIRE(s.records.size() == 6);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    CHECK(s.records[i].enclosure.hi >= 1.2206318);
    if (i > 0) {
      CHECK(s.records[i].enclosure.hi <= s.records[i - 1].enclosure.hi);
      CHECK(s.records[i].enclosure.lo <= s.records[i - 1].enclosure.hi);
    }
  }
  REQUIRE(s.estimate);
  CHECK(s.records.back().estimate == s.estimate);
}

TEST_CASE("run_series: Aitken on the binary cube-free series") {
  const SeriesResult s = run_series(2, RationalExponent(3, 1), 1, 10);
  REQUIRE(s.records.size() == 10);
  const double text_estimate = 1.4575772869237;
  REQUIRE(s.estimate);
  CHECK(std::fabs(*s.estimate - text_estimate) <= 5e-4);
  const auto every_other = aitken(s.records[5].enclosure.hi, s.records[7].enclosure.hi, s.records[9].enclosure.hi);
  REQUIRE(every_other);
  CHECK(std::fabs(*every_other - text_estimate) <= 5e-4);
}

TEST_CASE("run_series: finite languages stop after one flagged record") {
  SeriesOptions opt;
  opt.symmetry = true;
  const SeriesResult s = run_series(3, RationalExponent(7, 4), 3, 6, opt);
  CHECK(s.finite);
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].finite);
  CHECK(s.records[0].spec.period_cap == 3);
}

TEST_CASE("run_series: state cap truncates") {
  SeriesOptions opt;
  opt.state_cap = 200;
  const SeriesResult s = run_series(2, RationalExponent(3, 1), 1, 10, opt);
  CHECK(s.truncated);
  CHECK(s.records.size() == 4);  // 174 states at m = 4, 554 at m = 5
  CHECK_THROWS(run_series(2, RationalExponent(3, 1), 3, 2));
  CHECK_THROWS(run_series(2, RationalExponent(3, 1), 0, 2));
}

TEST_CASE("nearest rounding mode") {
  SeriesOptions opt;
  opt.paper_rounding = true;
  const SeriesResult s = run_series(2, RationalExponent(3, 1), 1, 1, opt);
  CHECK(s.records[0].display_lo == "1.6180340");
  CHECK(s.records[0].display_hi == "1.6180340");
}
