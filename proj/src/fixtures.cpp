#include "growthbound/fixtures.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <boost/crc.hpp>

#include "growthbound/error.hpp"

namespace growthbound {

namespace detail {
extern const std::string_view kFixtureCsv;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw Error("bad number in fixtures: " + std::string(s));
  return v;
}

// Unit of the last printed digit: 1e-7 for "1.2345678".
double last_digit_unit(std::string_view s) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return 1.0;
  return std::pow(10.0, -static_cast<double>(s.size() - dot - 1));
}

}  // namespace

std::optional<Enclosure> ReferenceCell::enclosure() const {
  if (kind == CellKind::Exact || kind == CellKind::TwoSided) return Enclosure{*lo, *hi};
  return std::nullopt;
}

GrowthRecord ReferenceCell::as_record() const {
  const auto enc = enclosure();
  if (!enc) throw std::invalid_argument("cell has no two-sided enclosure");
  GrowthRecord rec;
  rec.spec.alphabet_size = alphabet_size;
  rec.spec.exponent = exponent;
  rec.spec.period_cap = period_cap.value_or(1);
  rec.enclosure = *enc;
  rec.display_lo = lo_text;
  rec.display_hi = hi_text;
  rec.estimate = estimate;
  rec.finite = classify(alphabet_size, exponent) == Finiteness::Finite;
  return rec;
}

std::string_view fixture_csv() { return detail::kFixtureCsv; }

std::uint32_t fixture_checksum() {
  boost::crc_32_type crc;
  const auto csv = fixture_csv();
  crc.process_bytes(csv.data(), csv.size());
  return crc.checksum();
}

std::vector<ReferenceCell> parse_fixtures(std::string_view csv) {
  std::vector<ReferenceCell> cells;
  std::size_t line_no = 0;
  for (auto line : split(csv, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "table,k,exponent,m,lo,hi,estimate,jump") throw Error("unexpected fixture header");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) throw Error("fixture line " + std::to_string(line_no) + " has wrong field count");
    ReferenceCell c;
    c.table = std::string(f[0]);
    c.alphabet_size = static_cast<int>(parse_double(f[1]));
    c.exponent = parse_exponent(f[2]);
    if (!f[3].empty()) c.period_cap = static_cast<std::size_t>(parse_double(f[3]));
    c.lo_text = std::string(f[4]);
    c.hi_text = std::string(f[5]);
    c.estimate_text = std::string(f[6]);
    c.jump_text = std::string(f[7]);
    if (!f[4].empty()) c.lo = parse_double(f[4]);
    if (!f[5].empty()) c.hi = parse_double(f[5]);
    if (!f[6].empty()) {
      // "1.1645(6)": the parenthesized digit is uncertain; keep 1.1645 with a
      // tolerance of one unit in its last digit.
      std::string_view est = f[6];
      const auto paren = est.find('(');
      if (paren != std::string_view::npos) {
        est = est.substr(0, paren);
        c.estimate_tolerance = last_digit_unit(est);
      } else {
        c.estimate_tolerance = last_digit_unit(est) / 2;
      }
      c.estimate = parse_double(est);
    }
    if (!f[7].empty()) c.jump = parse_double(f[7]);
    if (c.lo && c.hi)
      c.kind = *c.lo == *c.hi ? CellKind::Exact : CellKind::TwoSided;
    else if (c.hi)
      c.kind = CellKind::UpperOnly;
    else if (c.estimate)
      c.kind = CellKind::Estimate;
    else
      throw Error("fixture line " + std::to_string(line_no) + " has no value");
    cells.push_back(std::move(c));
  }
  return cells;
}

std::span<const ReferenceCell> all_cells() {
  static const std::vector<ReferenceCell> cells = parse_fixtures(fixture_csv());
  return cells;
}

std::vector<ReferenceCell> lookup(int alphabet_size, const RationalExponent& e) {
  std::vector<ReferenceCell> out;
  for (const auto& c : all_cells())
    if (c.alphabet_size == alphabet_size && c.exponent == e) out.push_back(c);
  return out;
}

bool meets_rounding_cell(const Enclosure& interval, std::string_view printed) {
  const double v = parse_double(printed);
  const double half = last_digit_unit(printed) / 2;
  return interval.lo <= v + half && v - half <= interval.hi;
}

}  // namespace growthbound
