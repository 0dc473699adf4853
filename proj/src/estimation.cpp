#include "growthbound/estimation.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "growthbound/error.hpp"

namespace growthbound {

namespace {

// Increments the decimal digit string in place (digits and at most one '.').
void increment_decimal(std::string& s) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i] == '.') continue;
    if (s[i] != '9') {
      ++s[i];
      return;
    }
    s[i] = '0';
  }
  s.insert(s.begin(), '1');
}

}  // namespace

std::string format_decimal(double x, int places, Rounding mode) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot format non-finite value");
  if (places < 0) throw std::invalid_argument("negative decimal places");
  char buf[1600];
  if (mode == Rounding::Nearest) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, places);
    if (ec != std::errc{}) throw std::runtime_error("decimal conversion failed");
    return std::string(buf, end);
  }
  // 1080 fractional digits represent every double exactly.
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(x), std::chars_format::fixed, 1080);
  if (ec != std::errc{}) throw std::runtime_error("decimal conversion failed");
  const std::string exact(buf, end);
  const auto dot = exact.find('.');
  const std::size_t keep = places == 0 ? dot : dot + 1 + static_cast<std::size_t>(places);
  std::string out = exact.substr(0, keep);
  const bool inexact = exact.find_first_not_of('0', dot + 1 + static_cast<std::size_t>(places)) != std::string::npos;
  const bool negative = std::signbit(x) && x != 0.0;
  // Truncation moves toward zero; away-from-zero needs one more unit.
  const bool away = inexact && ((mode == Rounding::Up) != negative);
  if (away) increment_decimal(out);
  if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
  return out;
}

GrowthRecord make_record(const TaskSpec& spec, const FactorGraph& g, const SpectralResult& r, bool paper_rounding) {
  GrowthRecord rec;
  rec.spec = spec;
  rec.n_states = g.state_count();
  rec.n_edges = g.edge_count();
  rec.enclosure = r.enclosure;
  rec.converged = r.converged;
  rec.display_lo = format_decimal(r.enclosure.lo, kDisplayPlaces, paper_rounding ? Rounding::Nearest : Rounding::Down);
  rec.display_hi = format_decimal(r.enclosure.hi, kDisplayPlaces, paper_rounding ? Rounding::Nearest : Rounding::Up);
  rec.finite = classify(spec.alphabet_size, spec.exponent) == Finiteness::Finite;
  return rec;
}

std::optional<double> aitken(double u0, double u1, double u2) {
  const double d1 = u1 - u0;
  const double d2 = u2 - u1;
  const double denom = d2 - d1;  // u0 - 2 u1 + u2
  const double scale = std::fabs(u0) + 2 * std::fabs(u1) + std::fabs(u2);
  if (denom == 0.0 || std::fabs(denom) <= 8 * std::numeric_limits<double>::epsilon() * scale) return std::nullopt;
  // Algebraically equal to (u2 u0 - u1^2) / denom with less cancellation.
  return u2 - d2 * d2 / denom;
}

Enclosure jump_interval(const Enclosure& beta, const Enclosure& beta_plus) {
  return {std::max(0.0, beta_plus.lo - beta.hi), std::max(0.0, beta_plus.hi - beta.lo)};
}

Enclosure jump_interval(const GrowthRecord& beta, const GrowthRecord& beta_plus) {
  if (beta.spec.alphabet_size != beta_plus.spec.alphabet_size)
    throw std::invalid_argument("jump_interval: alphabet sizes differ");
  if (beta.spec.exponent.strict() || !beta_plus.spec.exponent.strict() ||
      beta.spec.exponent.with_strict(true) != beta_plus.spec.exponent)
    throw std::invalid_argument("jump_interval: expected beta and beta+ of the same rational");
  return jump_interval(beta.enclosure, beta_plus.enclosure);
}

SeriesResult run_series(int alphabet_size, const RationalExponent& e, std::size_t m_from, std::size_t m_to,
                        const SeriesOptions& options) {
  if (m_from < 1 || m_from > m_to) throw std::invalid_argument("invalid period range");
  const GraphProvider provider = options.provider ? options.provider : GraphProvider(build_graph);
  SeriesResult out;
  out.finite = classify(alphabet_size, e) == Finiteness::Finite;
  for (std::size_t m = m_from; m <= m_to; ++m) {
    TaskSpec spec;
    spec.alphabet_size = alphabet_size;
    spec.exponent = e;
    spec.period_cap = m;
    spec.symmetry = options.symmetry;
    spec.precision = options.precision;
    spec.state_cap = options.state_cap;
    try {
      const FactorGraph g = provider(spec);
      const SpectralResult r = spectral_enclosure(g, spec.precision, options.max_iters);
      out.records.push_back(make_record(spec, g, r, options.paper_rounding));
    } catch (const ResourceError&) {
      out.truncated = true;
      break;
    }
    if (out.finite) break;
  }
  const auto& rs = out.records;
  if (rs.size() >= 3) {
    const std::size_t n = rs.size();
    out.estimate = aitken(rs[n - 3].enclosure.hi, rs[n - 2].enclosure.hi, rs[n - 1].enclosure.hi);
    out.records.back().estimate = out.estimate;
  }
  return out;
}

}  // namespace growthbound
