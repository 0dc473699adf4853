#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace growthbound {

// A rational repetition exponent beta >= 1. With `strict` set the exponent
// denotes beta+, i.e. only powers of exponent strictly greater than beta are
// forbidden. Ordering: beta < beta+ < anything larger than beta.
class RationalExponent {
 public:
  RationalExponent(std::uint64_t numerator, std::uint64_t denominator, bool strict = false);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  bool strict() const noexcept { return strict_; }

  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Same rational with the strictness flag replaced.
  RationalExponent with_strict(bool strict) const { return {num_, den_, strict}; }

  // Canonical text form `a[/b][+]`.
  std::string to_string() const;

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
  friend std::strong_ordering operator<=>(const RationalExponent& lhs, const RationalExponent& rhs);

 private:
  std::uint64_t num_;
  std::uint64_t den_;
  bool strict_;
};

// Parses `INT[/INT][+]`. Throws ParseError with a kind identifying the failure.
RationalExponent parse_exponent(std::string_view text);

// Least length n such that a word of length n with period p is a forbidden
// power: n/p >= beta, or n/p > beta for beta+. Throws std::overflow_error if
// the product numerator * p does not fit 64 bits.
std::uint64_t forbidden_length(const RationalExponent& e, std::uint64_t period);

enum class Finiteness { Finite, Infinite };

// Dejean classification of the k-ary power-free language.
Finiteness classify(int alphabet_size, const RationalExponent& e);

// Repetition threshold as a strict exponent: (7/4)+ for k=3, (7/5)+ for k=4,
// (k/(k-1))+ otherwise.
RationalExponent repetition_threshold(int alphabet_size);

// One computation task.
struct TaskSpec {
  int alphabet_size = 2;
  RationalExponent exponent{2, 1, false};
  std::uint64_t period_cap = 1;
  bool symmetry = false;
  double precision = 1e-9;
  std::size_t state_cap = std::size_t{1} << 27;

  // Throws std::invalid_argument if any field is out of range.
  void validate() const;

  // Cache key `k/a/b/strict/m/sym`.
  std::string key() const;
};

}  // namespace growthbound
