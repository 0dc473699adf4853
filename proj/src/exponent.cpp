#include "growthbound/exponent.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "growthbound/error.hpp"

namespace growthbound {

RationalExponent::RationalExponent(std::uint64_t numerator, std::uint64_t denominator, bool strict)
    : num_(numerator), den_(denominator), strict_(strict) {
  if (den_ == 0) throw std::invalid_argument("exponent denominator is zero");
  const std::uint64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
  if (num_ < den_) throw std::invalid_argument("exponent below 1");
}

std::string RationalExponent::to_string() const {
  std::string out = std::to_string(num_);
  if (den_ != 1) out += "/" + std::to_string(den_);
  if (strict_) out += "+";
  return out;
}

std::strong_ordering operator<=>(const RationalExponent& lhs, const RationalExponent& rhs) {
  // a/b vs c/d; numerators and denominators are small, 128-bit products.
  const auto l = static_cast<unsigned __int128>(lhs.num_) * rhs.den_;
  const auto r = static_cast<unsigned __int128>(rhs.num_) * lhs.den_;
  if (l != r) return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
  return lhs.strict_ <=> rhs.strict_;
}

namespace {

bool parse_uint(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

RationalExponent parse_exponent(std::string_view text) {
  const std::string original(text);
  bool strict = false;
  if (!text.empty() && text.back() == '+') {
    strict = true;
    text.remove_suffix(1);
  }
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  const auto slash = text.find('/');
  const bool ok = slash == std::string_view::npos
                      ? parse_uint(text, num)
                      : parse_uint(text.substr(0, slash), num) && parse_uint(text.substr(slash + 1), den);
  if (!ok) throw ParseError(ParseErrorKind::Malformed, "malformed exponent '" + original + "'");
  if (den == 0) throw ParseError(ParseErrorKind::ZeroDenominator, "zero denominator in '" + original + "'");
  if (num < den) throw ParseError(ParseErrorKind::BelowOne, "exponent '" + original + "' is below 1");
  return {num, den, strict};
}

std::uint64_t forbidden_length(const RationalExponent& e, std::uint64_t period) {
  if (period == 0) throw std::invalid_argument("period must be positive");
  std::uint64_t product = 0;
  if (__builtin_mul_overflow(e.numerator(), period, &product))
    throw std::overflow_error("forbidden_length: numerator * period overflows");
  const std::uint64_t b = e.denominator();
  // beta+: floor(a p / b) + 1; beta: ceil(a p / b).
  return e.strict() ? product / b + 1 : product / b + (product % b != 0 ? 1 : 0);
}

RationalExponent repetition_threshold(int alphabet_size) {
  if (alphabet_size < 2) throw std::invalid_argument("alphabet size must be at least 2");
  if (alphabet_size == 3) return {7, 4, true};
  if (alphabet_size == 4) return {7, 5, true};
  const auto k = static_cast<std::uint64_t>(alphabet_size);
  return {k, k - 1, true};
}

Finiteness classify(int alphabet_size, const RationalExponent& e) {
  return e >= repetition_threshold(alphabet_size) ? Finiteness::Infinite : Finiteness::Finite;
}

void TaskSpec::validate() const {
  if (alphabet_size < 2 || alphabet_size > 36)
    throw std::invalid_argument("alphabet size must be in [2, 36]");
  if (period_cap < 1) throw std::invalid_argument("period cap must be at least 1");
  if (!(precision > 0)) throw std::invalid_argument("precision must be positive");
  if (state_cap < 1) throw std::invalid_argument("state cap must be at least 1");
}

std::string TaskSpec::key() const {
  return std::to_string(alphabet_size) + "/" + std::to_string(exponent.numerator()) + "/" +
         std::to_string(exponent.denominator()) + "/" + (exponent.strict() ? "1" : "0") + "/" +
         std::to_string(period_cap) + "/" + (symmetry ? "1" : "0");
}

}  // namespace growthbound
