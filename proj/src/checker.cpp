#include "growthbound/checker.hpp"

#include <algorithm>
#include <stdexcept>

namespace growthbound {

namespace {

// Suffix of w of length len has period p.
bool suffix_has_period(std::span<const Letter> w, std::size_t len, std::size_t p) {
  const std::size_t start = w.size() - len;
  for (std::size_t i = start; i + p < w.size(); ++i)
    if (w[i] != w[i + p]) return false;
  return true;
}

}  // namespace

bool has_period(std::span<const Letter> w, std::size_t period) {
  if (period < 1 || period > w.size()) throw std::out_of_range("period out of range");
  return suffix_has_period(w, w.size(), period);
}

std::optional<std::size_t> ends_with_forbidden_power(std::span<const Letter> w, const RationalExponent& e,
                                                     std::size_t period_cap) {
  const std::size_t cap = std::min(period_cap, w.size());
  for (std::size_t p = 1; p <= cap; ++p) {
    const auto len = forbidden_length(e, p);
    if (len > w.size()) break;  // forbidden_length is nondecreasing in p
    if (suffix_has_period(w, static_cast<std::size_t>(len), p)) return p;
  }
  return std::nullopt;
}

bool is_allowed(std::span<const Letter> w, const RationalExponent& e, std::optional<std::size_t> period_cap) {
  const std::size_t cap = period_cap.value_or(w.size());
  for (std::size_t n = 1; n <= w.size(); ++n)
    if (ends_with_forbidden_power(w.first(n), e, cap)) return false;
  return true;
}

PowerRule::PowerRule(const RationalExponent& e, std::size_t period_cap) : exponent_(e) {
  if (period_cap < 1) throw std::invalid_argument("period cap must be at least 1");
  lengths_.reserve(period_cap);
  for (std::size_t p = 1; p <= period_cap; ++p) lengths_.push_back(forbidden_length(e, p));
}

std::optional<std::size_t> PowerRule::forbidden_suffix(std::span<const Letter> w) const {
  for (std::size_t p = 1; p <= lengths_.size(); ++p) {
    const std::size_t len = lengths_[p - 1];
    if (len > w.size()) break;
    if (suffix_has_period(w, len, p)) return p;
  }
  return std::nullopt;
}

}  // namespace growthbound
