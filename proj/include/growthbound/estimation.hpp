#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "growthbound/exponent.hpp"
#include "growthbound/factor_graph.hpp"
#include "growthbound/spectral.hpp"

namespace growthbound {

enum class Rounding { Down, Up, Nearest };

// Decimal text of x with `places` fractional digits. Down and Up are exact
// directed roundings of the binary value; Nearest is correctly rounded.
std::string format_decimal(double x, int places, Rounding mode);

inline constexpr int kDisplayPlaces = 7;

struct GrowthRecord {
  TaskSpec spec;
  std::size_t n_states = 0;
  std::size_t n_edges = 0;
  Enclosure enclosure;
  bool converged = true;
  std::string display_lo;  // rounded down, or to nearest on request
  std::string display_hi;  // rounded up, or to nearest on request
  std::optional<double> estimate;
  bool finite = false;     // the true language is finite
  bool truncated = false;  // build hit the state cap; no enclosure
};

GrowthRecord make_record(const TaskSpec& spec, const FactorGraph& g, const SpectralResult& r,
                         bool paper_rounding = false);

// Limit of a geometrically converging sequence from three consecutive terms,
// (u2 u0 - u1^2) / (u0 - 2 u1 + u2). Absent when the denominator vanishes.
std::optional<double> aitken(double u0, double u1, double u2);

// Certified interval for alpha(beta+) - alpha(beta) from enclosures of both,
// clamped below at 0.
Enclosure jump_interval(const Enclosure& beta, const Enclosure& beta_plus);
// Same, after checking both records describe the same k and rational with
// strictness off and on respectively. Throws std::invalid_argument otherwise.
Enclosure jump_interval(const GrowthRecord& beta, const GrowthRecord& beta_plus);

using GraphProvider = std::function<FactorGraph(const TaskSpec&)>;

struct SeriesOptions {
  double precision = 1e-9;
  std::size_t state_cap = std::size_t{1} << 27;
  bool symmetry = false;
  bool paper_rounding = false;
  std::size_t max_iters = kDefaultMaxIterations;
  GraphProvider provider;  // defaults to build_graph
};

struct SeriesResult {
  std::vector<GrowthRecord> records;
  std::optional<double> estimate;  // Aitken on the last three upper bounds
  bool finite = false;
  bool truncated = false;
};

// Bounds for m = m_from..m_to. A finite language stops after its first
// record; a state-cap hit stops the series and flags truncation.
SeriesResult run_series(int alphabet_size, const RationalExponent& e, std::size_t m_from, std::size_t m_to,
                        const SeriesOptions& options = {});

}  // namespace growthbound
