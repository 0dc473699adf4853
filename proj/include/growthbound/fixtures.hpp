#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "growthbound/estimation.hpp"
#include "growthbound/exponent.hpp"
#include "growthbound/spectral.hpp"

namespace growthbound {

enum class CellKind { Exact, TwoSided, UpperOnly, Estimate };

// One published value (or value pair) for the k-ary language avoiding an
// exponent. Numbers keep their source text next to the parsed value.
struct ReferenceCell {
  std::string table;  // "1".."4", or "text" for values quoted in prose
  int alphabet_size = 0;
  RationalExponent exponent{1, 1, false};
  CellKind kind = CellKind::Exact;
  std::optional<std::size_t> period_cap;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> estimate;
  double estimate_tolerance = 0.0;  // one unit of the last kept digit when a digit was parenthesized
  std::optional<double> jump;
  std::string lo_text, hi_text, estimate_text, jump_text;

  // [lo, hi] for exact and two-sided cells.
  std::optional<Enclosure> enclosure() const;
  // Record usable with jump_interval; requires an enclosure.
  GrowthRecord as_record() const;
};

// Raw CSV: table,k,exponent,m,lo,hi,estimate,jump.
std::string_view fixture_csv();
std::uint32_t fixture_checksum();  // CRC-32 of fixture_csv()

std::vector<ReferenceCell> parse_fixtures(std::string_view csv);
std::span<const ReferenceCell> all_cells();
std::vector<ReferenceCell> lookup(int alphabet_size, const RationalExponent& e);

// True if the interval meets the rounding cell of a value printed with the
// given text, i.e. [v - u/2, v + u/2] with u one unit of the last digit.
bool meets_rounding_cell(const Enclosure& interval, std::string_view printed);

}  // namespace growthbound
