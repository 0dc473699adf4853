#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "growthbound/exponent.hpp"

namespace growthbound {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

// True iff w[i] == w[i + p] for all valid i. Requires 1 <= p <= |w|.
bool has_period(std::span<const Letter> w, std::size_t period);

// Smallest p <= m such that the suffix of w of length forbidden_length(e, p)
// exists and has period p.
std::optional<std::size_t> ends_with_forbidden_power(std::span<const Letter> w, const RationalExponent& e,
                                                     std::size_t period_cap);

// No prefix of w ends with a forbidden power of period <= cap. Without a cap
// every period is considered, which is membership in the power-free language.
bool is_allowed(std::span<const Letter> w, const RationalExponent& e, std::optional<std::size_t> period_cap);

// Precomputed forbidden lengths for periods 1..m, used on hot paths.
class PowerRule {
 public:
  PowerRule(const RationalExponent& e, std::size_t period_cap);

  const RationalExponent& exponent() const noexcept { return exponent_; }
  std::size_t period_cap() const noexcept { return lengths_.size(); }
  // Length of the longest forbidden power considered, forbidden_length(e, m).
  std::size_t window() const noexcept { return lengths_.back(); }

  std::optional<std::size_t> forbidden_suffix(std::span<const Letter> w) const;

 private:
  RationalExponent exponent_;
  std::vector<std::size_t> lengths_;
};

}  // namespace growthbound
