// growthbound: upper bounds, enclosures and extrapolated estimates for the
// growth rates of power-free languages.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "growthbound/error.hpp"
#include "growthbound/pipeline.hpp"

namespace {

void add_common(CLI::App* cmd, growthbound::RunConfig& config, std::string& periods, std::string& format,
                double& precision, bool& no_symmetry) {
  cmd->add_option("-k", config.alphabet_size, "alphabet size")->required();
  cmd->add_option("-e", config.exponent_text, "exponent a[/b][+]")->required();
  cmd->add_option("-m", periods, "period cap m or range A..B");
  cmd->add_option("--precision", precision, "target enclosure width");
  cmd->add_flag("--no-symmetry", no_symmetry, "disable the alphabet-renaming quotient");
  cmd->add_option("--state-cap", config.state_cap, "maximum number of graph states");
  cmd->add_option("--cache", config.cache_dir, "graph cache directory");
  cmd->add_option("--format", format, "json, csv or table");
  cmd->add_flag("--paper-rounding", config.paper_rounding, "round displayed bounds to nearest");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace growthbound;
  CLI::App app{"Growth rates of power-free languages"};
  app.require_subcommand(1);

  RunConfig config;
  std::string periods;
  std::string format;
  double precision = 1e-9;
  bool no_symmetry = false;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"bound", "upper bound and enclosure for one period cap", Command::Bound},
      {"series", "bounds for a range of period caps plus an extrapolated estimate", Command::Series},
      {"jump", "enclosure of the growth jump between beta and beta+", Command::Jump},
      {"count", "brute-force word counts", Command::Count},
      {"check", "oracle and fixture self-check", Command::Check},
  };
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    if (s.command == Command::Check) {
      cmd->add_option("--precision", precision, "target enclosure width");
      cmd->add_option("--cache", config.cache_dir, "graph cache directory to verify");
    } else {
      add_common(cmd, config, periods, format, precision, no_symmetry);
    }
    if (s.command == Command::Count) cmd->add_option("--length", config.length, "longest word length");
    cmd->callback([&config, c = s.command] { config.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    config.precision = precision;
    if (no_symmetry) config.symmetry = false;
    if (!periods.empty()) {
      const auto [from, to] = parse_period_range(periods);
      config.m_from = from;
      config.m_to = to;
    }
    if (!format.empty()) config.format = parse_format(format);
    if (const char* env = std::getenv("GROWTHBOUND_CACHE"); env && *env) config.cache_dir = env;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const CommandOutput out = run_command(config);
  for (const auto& msg : out.messages) std::cerr << msg << "\n";
  std::cout << out.text;
  return out.exit_code;
}
