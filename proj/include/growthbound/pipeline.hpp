#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthbound/cache.hpp"
#include "growthbound/estimation.hpp"
#include "growthbound/exponent.hpp"

namespace growthbound {

enum class Command { Bound, Series, Jump, Count, Check };
enum class OutputFormat { Json, Csv, Table };

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct RunConfig {
  Command command = Command::Bound;
  int alphabet_size = 2;
  std::string exponent_text = "2";
  std::optional<std::size_t> m_from;
  std::optional<std::size_t> m_to;
  double precision = 1e-9;
  std::optional<bool> symmetry;  // default: on for k >= 3
  std::size_t state_cap = std::size_t{1} << 27;
  std::optional<std::string> cache_dir;
  std::optional<OutputFormat> format;  // default: csv for count, json otherwise
  bool paper_rounding = false;
  std::size_t length = 14;  // count: longest word length
  std::size_t max_iters = kDefaultMaxIterations;

  bool use_symmetry() const { return symmetry.value_or(alphabet_size >= 3); }
  // Throws std::invalid_argument or ParseError on inconsistent settings.
  void validate() const;
};

// Parses `INT` or `A..B`.
std::pair<std::size_t, std::size_t> parse_period_range(std::string_view text);
OutputFormat parse_format(std::string_view text);

struct CommandOutput {
  std::string text;                   // payload for stdout
  std::vector<std::string> messages;  // diagnostics for stderr
  int exit_code = kExitOk;
};

nlohmann::ordered_json record_json(const GrowthRecord& rec);

// Runs a command end to end. Parse and resource errors are turned into exit
// codes; other exceptions propagate.
CommandOutput run_command(const RunConfig& config);

struct CheckLine {
  std::string name;
  bool ok;
  std::string detail;
};

struct CheckOptions {
  double precision = 1e-9;
  std::size_t state_budget = 20'000;  // per graph in the fixture bracketing pass
  std::size_t max_period = 12;
  std::optional<std::string> cache_dir;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  std::size_t oracle_specs = 0;
  std::size_t oracle_passed = 0;
  std::size_t bracket_cells = 0;
  std::size_t bracket_passed = 0;
  bool ok() const;
  std::string render() const;
};

// Oracle equivalence on the small grid, cap saturation, cache integrity and
// bracketing of published values by computed upper bounds.
CheckReport run_check(const CheckOptions& options);

}  // namespace growthbound
