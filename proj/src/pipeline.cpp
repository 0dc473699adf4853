#include "growthbound/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "growthbound/counting.hpp"
#include "growthbound/error.hpp"
#include "growthbound/fixtures.hpp"

namespace growthbound {

using nlohmann::ordered_json;

namespace {

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(ParseErrorKind::Malformed, "expected a nonnegative integer, got '" + std::string(s) + "'");
  return v;
}

std::string fixed7(double x) { return format_decimal(x, kDisplayPlaces, Rounding::Nearest); }

ordered_json optional_number(const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

TaskSpec task_for(const RunConfig& c, const RationalExponent& e, std::size_t m) {
  TaskSpec spec;
  spec.alphabet_size = c.alphabet_size;
  spec.exponent = e;
  spec.period_cap = m;
  spec.symmetry = c.use_symmetry();
  spec.precision = c.precision;
  spec.state_cap = c.state_cap;
  spec.validate();
  return spec;
}

GrowthRecord truncated_record(const TaskSpec& spec, std::size_t partial) {
  GrowthRecord rec;
  rec.spec = spec;
  rec.n_states = partial;
  rec.truncated = true;
  rec.converged = false;
  rec.finite = classify(spec.alphabet_size, spec.exponent) == Finiteness::Finite;
  return rec;
}

// Builds (through the cache) and encloses one task.
GrowthRecord compute_record(const RunConfig& c, GraphCache& cache, const TaskSpec& spec) {
  try {
    const FactorGraph g = cache.get_or_build(spec);
    const SpectralResult r = spectral_enclosure(g, spec.precision, c.max_iters);
    return make_record(spec, g, r, c.paper_rounding);
  } catch (const ResourceError& e) {
    return truncated_record(spec, e.partial());
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string record_csv_header() { return "k,exponent,m,symmetry,states,edges,lo,hi,display_lo,display_hi,estimate,finite,truncated,converged\n"; }

std::string record_csv_row(const GrowthRecord& r) {
  std::ostringstream s;
  const auto num = [](double x) { return ordered_json(x).dump(); };
  s << r.spec.alphabet_size << ',' << r.spec.exponent.to_string() << ',' << r.spec.period_cap << ','
    << (r.spec.symmetry ? 1 : 0) << ',' << r.n_states << ',' << r.n_edges << ',';
  if (!r.truncated) s << num(r.enclosure.lo) << ',' << num(r.enclosure.hi);
  else s << ',';
  s << ',' << r.display_lo << ',' << r.display_hi << ',' << (r.estimate ? num(*r.estimate) : "") << ','
    << (r.finite ? 1 : 0) << ',' << (r.truncated ? 1 : 0) << ',' << (r.converged ? 1 : 0) << '\n';
  return s.str();
}

std::string record_table_row(const GrowthRecord& r) {
  std::string row = pad(std::to_string(r.spec.period_cap), 5) + pad(std::to_string(r.n_states), 12) +
                    pad(std::to_string(r.n_edges), 12);
  if (r.truncated) return row + "  (state cap reached)\n";
  row += "  " + pad(r.display_lo, 11) + "  " + pad(r.display_hi, 11);
  if (!r.converged) row += "  (not converged)";
  return row + "\n";
}

std::string table_header(const RunConfig& c, const RationalExponent& e) {
  return "k=" + std::to_string(c.alphabet_size) + " exponent=" + e.to_string() +
         " symmetry=" + (c.use_symmetry() ? "on" : "off") + "\n" + pad("m", 5) + pad("states", 12) +
         pad("edges", 12) + "  " + pad("lower", 11) + "  " + pad("upper", 11) + "\n";
}

CommandOutput cmd_bound(const RunConfig& c, GraphCache& cache) {
  const RationalExponent e = parse_exponent(c.exponent_text);
  const GrowthRecord rec = compute_record(c, cache, task_for(c, e, *c.m_from));
  CommandOutput out;
  switch (c.format.value_or(OutputFormat::Json)) {
    case OutputFormat::Json: out.text = dump(record_json(rec)); break;
    case OutputFormat::Csv: out.text = record_csv_header() + record_csv_row(rec); break;
    case OutputFormat::Table:
      out.text = table_header(c, e) + record_table_row(rec);
      if (rec.finite) out.text += "language is finite; bound is for the approximation\n";
      break;
  }
  if (rec.truncated) out.exit_code = kExitResource;
  return out;
}

CommandOutput cmd_series(const RunConfig& c, GraphCache& cache) {
  const RationalExponent e = parse_exponent(c.exponent_text);
  SeriesOptions opt;
  opt.precision = c.precision;
  opt.state_cap = c.state_cap;
  opt.symmetry = c.use_symmetry();
  opt.paper_rounding = c.paper_rounding;
  opt.max_iters = c.max_iters;
  opt.provider = [&cache](const TaskSpec& s) { return cache.get_or_build(s); };
  const SeriesResult res = run_series(c.alphabet_size, e, *c.m_from, *c.m_to, opt);

  CommandOutput out;
  switch (c.format.value_or(OutputFormat::Json)) {
    case OutputFormat::Json: {
      ordered_json j;
      j["spec"] = {{"k", c.alphabet_size},
                   {"exponent", e.to_string()},
                   {"m_from", *c.m_from},
                   {"m_to", *c.m_to},
                   {"symmetry", c.use_symmetry()}};
      j["records"] = ordered_json::array();
      for (const auto& r : res.records) j["records"].push_back(record_json(r));
      j["estimate"] = optional_number(res.estimate);
      j["finite"] = res.finite;
      j["truncated"] = res.truncated;
      out.text = dump(j);
      break;
    }
    case OutputFormat::Csv:
      out.text = record_csv_header();
      for (const auto& r : res.records) out.text += record_csv_row(r);
      break;
    case OutputFormat::Table:
      out.text = table_header(c, e);
      for (const auto& r : res.records) out.text += record_table_row(r);
      if (res.truncated) out.text += "series stopped: state cap reached\n";
      if (res.finite) out.text += "language is finite; bound is for the approximation\n";
      out.text += "estimate " + (res.estimate ? fixed7(*res.estimate) : std::string("n/a")) +
                  " (extrapolated, not certified)\n";
      break;
  }
  if (res.truncated) out.exit_code = kExitResource;
  return out;
}

CommandOutput cmd_jump(const RunConfig& c, GraphCache& cache) {
  const RationalExponent e = parse_exponent(c.exponent_text).with_strict(false);
  const std::size_t m = *c.m_from;
  const GrowthRecord beta = compute_record(c, cache, task_for(c, e, m));
  const GrowthRecord plus = compute_record(c, cache, task_for(c, e.with_strict(true), m));
  CommandOutput out;
  if (beta.truncated || plus.truncated) out.exit_code = kExitResource;
  std::optional<Enclosure> jump;
  if (!beta.truncated && !plus.truncated) jump = jump_interval(beta, plus);
  std::optional<std::string> published;
  for (const auto& cell : lookup(c.alphabet_size, e))
    if (!cell.jump_text.empty()) published = cell.jump_text;

  switch (c.format.value_or(OutputFormat::Json)) {
    case OutputFormat::Json: {
      ordered_json j;
      j["k"] = c.alphabet_size;
      j["exponent"] = e.to_string();
      j["m"] = m;
      j["beta"] = record_json(beta);
      j["beta_plus"] = record_json(plus);
      j["jump"] = jump ? ordered_json{{"lo", jump->lo}, {"hi", jump->hi}} : ordered_json(nullptr);
      j["published_jump"] = published ? ordered_json(*published) : ordered_json(nullptr);
      out.text = dump(j);
      break;
    }
    case OutputFormat::Csv:
      out.text = "k,exponent,m,jump_lo,jump_hi,published_jump\n" + std::to_string(c.alphabet_size) + "," +
                 e.to_string() + "," + std::to_string(m) + "," +
                 (jump ? ordered_json(jump->lo).dump() + "," + ordered_json(jump->hi).dump() : std::string(",")) +
                 "," + published.value_or("") + "\n";
      break;
    case OutputFormat::Table:
      out.text = table_header(c, e) + record_table_row(beta) + record_table_row(plus);
      out.text += "jump of the approximations at m=" + std::to_string(m) + ": ";
      out.text += jump ? "[" + format_decimal(jump->lo, kDisplayPlaces, Rounding::Down) + ", " +
                             format_decimal(jump->hi, kDisplayPlaces, Rounding::Up) + "]"
                       : std::string("n/a");
      if (published) out.text += "  (published: " + *published + ")";
      out.text += "\n";
      break;
  }
  return out;
}

CommandOutput cmd_count(const RunConfig& c) {
  const RationalExponent e = parse_exponent(c.exponent_text);
  const std::optional<std::size_t> m = c.m_from;
  CommandOutput out;
  CountSeries s;
  try {
    s = brute_count(c.alphabet_size, e, m, c.length);
  } catch (const ResourceError& err) {
    out.messages.push_back(err.what());
    out.exit_code = kExitResource;
    return out;
  }
  switch (c.format.value_or(OutputFormat::Csv)) {
    case OutputFormat::Csv: out.text = s.to_csv(); break;
    case OutputFormat::Json: {
      ordered_json j;
      j["k"] = c.alphabet_size;
      j["exponent"] = e.to_string();
      j["m"] = m ? ordered_json(*m) : ordered_json(nullptr);
      j["counts"] = ordered_json::array();
      for (const auto& v : s.counts) j["counts"].push_back(v.str());
      j["submultiplicative"] = fekete_check(s);
      out.text = dump(j);
      break;
    }
    case OutputFormat::Table:
      for (std::size_t n = 0; n < s.counts.size(); ++n)
        out.text += pad(std::to_string(n), 4) + "  " + s.counts[n].str() + "\n";
      break;
  }
  return out;
}

CommandOutput cmd_check(const RunConfig& c) {
  CheckOptions opt;
  opt.precision = c.precision;
  opt.cache_dir = c.cache_dir;
  const CheckReport report = run_check(opt);
  CommandOutput out;
  out.text = report.render();
  out.exit_code = report.ok() ? kExitOk : kExitFailure;
  return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_period_range(std::string_view text) {
  const auto dots = text.find("..");
  std::pair<std::size_t, std::size_t> r;
  if (dots == std::string_view::npos)
    r.first = r.second = parse_size(text);
  else
    r = {parse_size(text.substr(0, dots)), parse_size(text.substr(dots + 2))};
  if (r.first < 1 || r.first > r.second)
    throw ParseError(ParseErrorKind::Malformed, "period range must satisfy 1 <= A <= B");
  return r;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw ParseError(ParseErrorKind::Malformed, "unknown format '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (alphabet_size < 2 || alphabet_size > 36) throw std::invalid_argument("-k must be in [2, 36]");
  parse_exponent(exponent_text);
  if (!(precision > 0)) throw std::invalid_argument("--precision must be positive");
  if (state_cap < 1) throw std::invalid_argument("--state-cap must be at least 1");
  if (m_from.has_value() != m_to.has_value()) throw std::invalid_argument("incomplete period range");
  if (m_from && (*m_from < 1 || *m_from > *m_to)) throw std::invalid_argument("-m must satisfy 1 <= A <= B");
  switch (command) {
    case Command::Bound:
    case Command::Jump:
      if (!m_from || *m_from != *m_to) throw std::invalid_argument("this command needs a single -m value");
      break;
    case Command::Series:
      if (!m_from) throw std::invalid_argument("series needs -m A..B");
      break;
    case Command::Count:
      if (m_from && *m_from != *m_to) throw std::invalid_argument("count takes at most a single -m value");
      break;
    case Command::Check: break;
  }
}

ordered_json record_json(const GrowthRecord& rec) {
  ordered_json j;
  j["spec"] = {{"k", rec.spec.alphabet_size},
               {"exponent", rec.spec.exponent.to_string()},
               {"m", rec.spec.period_cap},
               {"symmetry", rec.spec.symmetry}};
  j["graph"] = {{"states", rec.n_states}, {"edges", rec.n_edges}};
  if (rec.truncated) {
    j["bound"] = nullptr;
  } else {
    j["bound"] = {{"lo", rec.enclosure.lo},
                  {"hi", rec.enclosure.hi},
                  {"display_lo", rec.display_lo},
                  {"display_hi", rec.display_hi}};
  }
  j["estimate"] = optional_number(rec.estimate);
  j["finite"] = rec.finite;
  j["truncated"] = rec.truncated;
  j["converged"] = rec.converged;
  return j;
}

CommandOutput run_command(const RunConfig& config) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    return {"", {e.what()}, kExitUsage};
  }
  GraphCache cache(config.cache_dir ? std::optional<std::filesystem::path>(*config.cache_dir) : std::nullopt);
  CommandOutput out;
  switch (config.command) {
    case Command::Bound: out = cmd_bound(config, cache); break;
    case Command::Series: out = cmd_series(config, cache); break;
    case Command::Jump: out = cmd_jump(config, cache); break;
    case Command::Count: out = cmd_count(config); break;
    case Command::Check: out = cmd_check(config); break;
  }
  for (const auto& w : cache.warnings()) out.messages.push_back("warning: " + w);
  if (out.exit_code == kExitResource && out.messages.empty())
    out.messages.push_back("state cap of " + std::to_string(config.state_cap) + " reached; output is partial");
  return out;
}

// --- check -----------------------------------------------------------------

bool CheckReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
}

std::string CheckReport::render() const {
  std::string out;
  for (const auto& l : lines) out += std::string(l.ok ? "[ok]   " : "[FAIL] ") + l.name + (l.detail.empty() ? "" : "  " + l.detail) + "\n";
  out += "oracle equivalence: " + std::to_string(oracle_passed) + "/" + std::to_string(oracle_specs) + " specs " +
         (oracle_passed == oracle_specs ? "OK" : "FAILED") + "\n";
  out += "fixture bracketing: " + std::to_string(bracket_passed) + "/" + std::to_string(bracket_cells) +
         " feasible cells " + (bracket_passed == bracket_cells ? "OK" : "FAILED") + "\n";
  out += ok() ? "check passed\n" : "check FAILED\n";
  return out;
}

CheckReport run_check(const CheckOptions& options) {
  CheckReport report;
  constexpr std::size_t kMaxLength = 14;
  const std::vector<std::string> exponents = {"2", "2+", "7/3", "7/3+", "3", "3+"};

  GraphCache cache(options.cache_dir ? std::optional<std::filesystem::path>(*options.cache_dir) : std::nullopt);
  if (cache.persistent()) {
    const auto bad = cache.verify_all();
    for (const auto& name : bad) report.lines.push_back({"cache file " + name, false, "checksum failure"});
    if (bad.empty()) report.lines.push_back({"cache files", true, "all checksums valid"});
  }

  // Graph walk counts against brute-force enumeration.
  for (int k : {2, 3}) {
    for (const auto& text : exponents) {
      const RationalExponent e = parse_exponent(text);
      for (std::size_t m = 1; m <= 4; ++m) {
        TaskSpec spec;
        spec.alphabet_size = k;
        spec.exponent = e;
        spec.period_cap = m;
        spec.symmetry = k >= 3;
        const FactorGraph g = cache.get_or_build(spec);
        const auto brute = brute_count(k, e, m, kMaxLength);
        const auto walks = graph_counts(g, kMaxLength);
        bool same = true;
        for (std::size_t n = g.order(); n <= kMaxLength; ++n) same = same && walks[n - g.order()] == brute.counts[n];
        ++report.oracle_specs;
        report.oracle_passed += same ? 1 : 0;
        report.lines.push_back({"graph vs brute k=" + std::to_string(k) + " e=" + text + " m=" + std::to_string(m), same,
                                "n=" + std::to_string(g.order()) + ".." + std::to_string(kMaxLength)});
      }
    }
  }
  // A forbidden power inside a word of length n has period <= n.
  for (int k : {2, 3}) {
    for (const auto& text : exponents) {
      const RationalExponent e = parse_exponent(text);
      constexpr std::size_t n = 12;
      const bool same = brute_count(k, e, std::nullopt, n).counts == brute_count(k, e, n, n).counts;
      ++report.oracle_specs;
      report.oracle_passed += same ? 1 : 0;
      report.lines.push_back({"cap saturation k=" + std::to_string(k) + " e=" + text, same, "n<=12"});
    }
  }

  // Fixture consistency.
  {
    bool ok = true;
    std::string detail;
    for (const auto& c : all_cells()) {
      if (c.kind == CellKind::TwoSided && !(*c.lo < *c.hi && *c.hi - *c.lo < 1e-4)) {
        ok = false;
        detail += " k=" + std::to_string(c.alphabet_size) + " e=" + c.exponent.to_string();
      }
    }
    report.lines.push_back({"fixture two-sided cells", ok, detail});
  }

  // Computed upper bounds at small m must not undercut published lower
  // bounds, nor published upper bounds obtained with larger m.
  constexpr double kRoundingSlack = 5e-8;
  std::map<std::pair<int, std::string>, std::vector<const ReferenceCell*>> groups;
  for (const auto& c : all_cells())
    if (c.kind != CellKind::Estimate) groups[{c.alphabet_size, c.exponent.to_string()}].push_back(&c);
  for (const auto& [key, cells] : groups) {
    const RationalExponent e = parse_exponent(key.second);
    std::size_t m_limit = options.max_period;
    for (const auto* c : cells)
      if (c->period_cap) m_limit = std::min(m_limit, *c->period_cap);
    SeriesOptions opt;
    opt.precision = options.precision;
    opt.state_cap = options.state_budget;
    opt.symmetry = key.first >= 3;
    const SeriesResult res = run_series(key.first, e, 1, m_limit, opt);
    if (res.records.empty()) continue;  // infeasible at this budget
    std::string worst;
    bool ok = true;
    for (const auto* c : cells) {
      const double ref = c->lo ? *c->lo : *c->hi;
      bool cell_ok = true;
      for (const auto& r : res.records) {
        if (r.enclosure.hi < ref - kRoundingSlack) {
          cell_ok = false;
          worst = "m=" + std::to_string(r.spec.period_cap) + " hi=" + fixed7(r.enclosure.hi) + " < " +
                  (c->lo ? c->lo_text : c->hi_text) + " (table " + c->table + ")";
        }
      }
      ok = ok && cell_ok;
      ++report.bracket_cells;
      report.bracket_passed += cell_ok ? 1 : 0;
    }
    report.lines.push_back({"bracket k=" + std::to_string(key.first) + " e=" + key.second, ok,
                            ok ? "m=1.." + std::to_string(res.records.back().spec.period_cap) : worst});
  }
  return report;
}

}  // namespace growthbound
