#include "growthbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace growthbound {

SparseMatrix::SparseMatrix(const FactorGraph& g) {
  offsets_.assign(g.state_count() + 1, 0);
  columns_.reserve(g.edge_count());
  values_.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    ++offsets_[e.src + 1];
    columns_.push_back(e.dst);
    values_.push_back(static_cast<double>(e.weight));
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

SparseMatrix SparseMatrix::from_dense(std::span<const double> values, std::size_t n) {
  if (values.size() != n * n) throw std::invalid_argument("dense matrix size mismatch");
  SparseMatrix m;
  m.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = values[i * n + j];
      if (x < 0 || std::isnan(x)) throw std::invalid_argument("matrix entries must be nonnegative");
      if (x == 0) continue;
      m.columns_.push_back(static_cast<std::uint32_t>(j));
      m.values_.push_back(x);
    }
    m.offsets_[i + 1] = m.columns_.size();
  }
  return m;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double step_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}

double step_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

// Quotient y/v for a row that took `ops` floating-point operations, widened
// by 4 ulp per operation.
double widen_down(double q, std::size_t ops) { return q * (1.0 - 4.0 * static_cast<double>(ops) * kEps); }
double widen_up(double q, std::size_t ops) { return q * (1.0 + 4.0 * static_cast<double>(ops) * kEps); }

// One strongly connected component with local indexing.
struct Block {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> columns;
  std::vector<double> values;
};

Block extract_block(const SparseMatrix& a, std::span<const std::uint32_t> members,
                    std::span<const std::uint32_t> component_of, std::uint32_t id,
                    std::vector<std::uint32_t>& local) {
  Block b;
  b.offsets.assign(members.size() + 1, 0);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<std::uint32_t>(i);
  const auto off = a.offsets();
  const auto cols = a.columns();
  const auto vals = a.values();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::uint32_t row = members[i];
    for (std::size_t k = off[row]; k < off[row + 1]; ++k) {
      if (component_of[cols[k]] != id) continue;
      b.columns.push_back(local[cols[k]]);
      b.values.push_back(vals[k]);
    }
    b.offsets[i + 1] = b.columns.size();
  }
  return b;
}

struct BlockResult {
  Enclosure enclosure;
  bool converged;
  std::size_t iterations;
};

// Power iteration on (B + I). Stops when the shifted enclosure is narrower
// than `precision`, or once its upper end is at most `settled_below`: then the
// block cannot widen the overall enclosure beyond the requested precision.
BlockResult iterate_block(const Block& b, double precision, std::size_t max_iters, double settled_below) {
  const std::size_t n = b.offsets.size() - 1;
  std::vector<double> v(n, 1.0);
  std::vector<double> y(n);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iters; ++it) {
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = 0.0;
    double ymax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = v[i];
      for (std::size_t k = b.offsets[i]; k < b.offsets[i + 1]; ++k) s += b.values[k] * v[b.columns[k]];
      y[i] = s;
      const double q = s / v[i];
      const std::size_t ops = 2 * (b.offsets[i + 1] - b.offsets[i]) + 2;
      qmin = std::min(qmin, widen_down(q, ops));
      qmax = std::max(qmax, widen_up(q, ops));
      ymax = std::max(ymax, s);
    }
    // Undo the identity shift, then step outward for the subtraction.
    lo = std::max(lo, std::max(0.0, step_down(qmin - 1.0, 4)));
    hi = std::min(hi, step_up(qmax - 1.0, 4));
    if (hi - lo <= precision || hi <= settled_below) return {{lo, hi}, true, it};
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / ymax;
  }
  return {{lo, hi}, false, max_iters};
}

}  // namespace

Enclosure collatz_wielandt(const SparseMatrix& a, std::span<const double> v) {
  if (v.size() != a.size()) throw std::invalid_argument("vector size mismatch");
  const auto off = a.offsets();
  const auto cols = a.columns();
  const auto vals = a.values();
  double qmin = std::numeric_limits<double>::infinity();
  double qmax = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(v[i] > 0)) throw std::invalid_argument("vector must be strictly positive");
    double s = 0.0;
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) s += vals[k] * v[cols[k]];
    const std::size_t ops = 2 * (off[i + 1] - off[i]) + 1;
    qmin = std::min(qmin, widen_down(s / v[i], ops));
    qmax = std::max(qmax, widen_up(s / v[i], ops));
  }
  if (a.size() == 0) return {0.0, 0.0};
  return {std::max(0.0, qmin), qmax};
}

SpectralResult spectral_enclosure(const SparseMatrix& a, double precision, std::size_t max_iters) {
  if (!(precision > 0)) throw std::invalid_argument("precision must be positive");
  SpectralResult result;
  if (a.size() == 0) {
    result.empty = true;
    result.converged = true;
    return result;
  }
  const SccPartition part = scc_decompose(a.offsets(), a.columns());
  const auto off = a.offsets();
  const auto cols = a.columns();
  const auto vals = a.values();

  // Largest components first: they usually dominate, which lets the smaller
  // ones stop early. Every processed block keeps hi <= best_lo + precision.
  std::vector<std::uint32_t> order(part.components.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return part.components[x].size() > part.components[y].size();
  });

  double best_lo = 0.0;
  double best_hi = 0.0;
  bool converged = true;
  std::vector<std::uint32_t> local(a.size());
  for (std::uint32_t id : order) {
    const auto& members = part.components[id];
    if (members.size() == 1) {
      // Trivial component: its radius is the self-loop weight, if any.
      const std::uint32_t v = members[0];
      for (std::size_t k = off[v]; k < off[v + 1]; ++k) {
        if (cols[k] == v) {
          best_lo = std::max(best_lo, vals[k]);
          best_hi = std::max(best_hi, vals[k]);
        }
      }
      continue;
    }
    const Block block = extract_block(a, members, part.component_of, id, local);
    const BlockResult r = iterate_block(block, precision, max_iters, best_lo + precision);
    result.iterations += r.iterations;
    converged = converged && r.converged;
    best_lo = std::max(best_lo, r.enclosure.lo);
    best_hi = std::max(best_hi, r.enclosure.hi);
  }
  result.enclosure = {best_lo, best_hi};
  result.converged = converged;
  return result;
}

SpectralResult spectral_enclosure(const FactorGraph& g, double precision, std::size_t max_iters) {
  return spectral_enclosure(SparseMatrix(g), precision, max_iters);
}

}  // namespace growthbound
