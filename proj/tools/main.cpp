#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "cvqkd/commands.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/version.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_csv;
  std::string out_json;
  std::string plot;
  std::optional<std::uint64_t> seed;
  std::string threads = "auto";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw cvqkd::ConfigError("cannot read config file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int parse_threads(const std::string& value) {
  if (value == "auto") return 0;
  try {
    const int n = std::stoi(value);
    if (n > 0 && std::to_string(n) == value) return n;
  } catch (...) {
  }
  throw cvqkd::ConfigError("--threads expects a positive integer or 'auto'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CV-QKD downstream access-network simulator"};
  app.set_version_flag("--version", std::string(cvqkd::kToolVersion));
  app.require_subcommand(1);

  const std::map<std::string, std::pair<cvqkd::Subcommand, std::string>>
      commands = {
          {"keyrate",
           {cvqkd::Subcommand::keyrate, "Single-point secret key rate"}},
          {"sweep",
           {cvqkd::Subcommand::sweep, "Key-rate grid over distance and ONUs"}},
          {"tolerance",
           {cvqkd::Subcommand::tolerance, "Tolerable excess noise grid"}},
          {"compare",
           {cvqkd::Subcommand::compare, "Downstream vs point-to-point rates"}},
          {"optimize",
           {cvqkd::Subcommand::optimize, "Optimal modulation variance grid"}},
          {"mc",
           {cvqkd::Subcommand::mc, "Monte Carlo sampling and validation"}},
      };

  CliOptions opt;
  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.second);
    sub->add_option("--config", opt.config_path, "INI configuration file");
    sub->add_option("--out-csv", opt.out_csv, "CSV output path");
    sub->add_option("--out-json", opt.out_json, "JSON output path");
    sub->add_option("--plot", opt.plot, "SVG plot output path");
    sub->add_option("--seed", opt.seed, "Monte Carlo seed (mc only)");
    sub->add_option("--threads", opt.threads,
                    "Worker threads, or 'auto' (env CVQKD_THREADS)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string chosen = app.get_subcommands().front()->get_name();
    const cvqkd::Subcommand cmd = commands.at(chosen).first;
    cvqkd::RunConfig cfg;
    if (!opt.config_path.empty()) {
      cfg = cvqkd::parse_config(read_file(opt.config_path));
    }
    if (!opt.out_csv.empty()) cfg.output.csv = opt.out_csv;
    if (!opt.out_json.empty()) cfg.output.json = opt.out_json;
    if (!opt.plot.empty()) cfg.output.plot = opt.plot;
    cfg.threads = parse_threads(opt.threads);
    if (opt.seed) {
      if (cmd != cvqkd::Subcommand::mc || !cfg.mc) {
        throw cvqkd::ConfigError(
            "--seed applies to the mc subcommand with an [mc] block");
      }
      cfg.mc->seed = *opt.seed;
    }
    return cvqkd::run_command(cmd, cfg, std::cout, std::cerr);
  } catch (const cvqkd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
