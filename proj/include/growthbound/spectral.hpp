#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "growthbound/factor_graph.hpp"

namespace growthbound {

// Certified interval [lo, hi] around a spectral radius.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool overlaps(const Enclosure& o) const noexcept { return lo <= o.hi && o.lo <= hi; }
};

// Nonnegative matrix in compressed-row form.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(const FactorGraph& g);
  // Row-major dense input; zeros are dropped. Negative entries are rejected.
  static SparseMatrix from_dense(std::span<const double> values, std::size_t n);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const std::uint32_t> columns() const noexcept { return columns_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> columns_;
  std::vector<double> values_;
};

struct SpectralResult {
  Enclosure enclosure;
  bool converged = false;
  bool empty = false;          // no states: growth 0
  std::size_t iterations = 0;  // summed over components
};

inline constexpr std::size_t kDefaultMaxIterations = 1'000'000;

// Encloses the Perron root of `a` by power iteration on A+I, one strongly
// connected component at a time, using Collatz-Wielandt quotients widened by
// 4 ulp per floating-point operation. On non-convergence the best certified
// enclosure is returned with converged = false.
SpectralResult spectral_enclosure(const SparseMatrix& a, double precision,
                                  std::size_t max_iters = kDefaultMaxIterations);
SpectralResult spectral_enclosure(const FactorGraph& g, double precision,
                                  std::size_t max_iters = kDefaultMaxIterations);

// Collatz-Wielandt bounds min (Av)_i/v_i and max (Av)_i/v_i for a strictly
// positive v, with the same outward slack as the iteration.
Enclosure collatz_wielandt(const SparseMatrix& a, std::span<const double> v);

}  // namespace growthbound
