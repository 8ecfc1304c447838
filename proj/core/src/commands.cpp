#include "cvqkd/commands.hpp"

#include <fmt/format.h>

#include <ostream>

#include "cvqkd/csv.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/parallel.hpp"
#include "cvqkd/plot.hpp"
#include "cvqkd/serialize.hpp"

namespace cvqkd {

namespace {

// CSV to the file when a path is set, otherwise verbatim to stdout; the
// summary line never mixes into CSV bytes.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& csv,
          const std::string& json, const std::string& plot,
          const std::string& summary) {
  if (!cfg.output.csv.empty()) {
    write_text_file(cfg.output.csv, csv);
  }
  if (!cfg.output.json.empty()) {
    write_text_file(cfg.output.json, json);
  }
  if (!cfg.output.plot.empty()) {
    if (plot.empty()) {
      throw ConfigError("this subcommand has no plot; drop the plot path");
    }
    write_text_file(cfg.output.plot, plot);
  }
  if (cfg.output.csv.empty() && !csv.empty()) {
    out << csv;
  } else {
    out << summary;
  }
}

template <typename Cell>
int cell_failures(const std::vector<Cell>& cells) {
  int failed = 0;
  for (const auto& c : cells) {
    if (!c.error.empty()) ++failed;
  }
  return failed;
}

int cmd_keyrate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.output.csv.empty()) {
    throw ConfigError("keyrate prints a report; drop the CSV path");
  }
  if (!cfg.output.plot.empty()) {
    throw ConfigError("keyrate has no plot; drop the plot path");
  }
  const KeyRateReport r = secret_key_rate(cfg.params);
  out << fmt::format("mutual_information [bit/symbol] = {}\n",
                     r.mutual_information_bits);
  out << fmt::format("holevo [bit/symbol] = {}\n", r.holevo_bits);
  out << fmt::format("key_rate [bit/symbol] = {}\n", r.key_rate_bits);
  out << fmt::format("key_rate_clamped [bit/symbol] = {}\n",
                     r.key_rate_clamped);
  out << fmt::format("nus_joint [1] = {} {} {}\n", r.nus_joint[0],
                     r.nus_joint[1], r.nus_joint[2]);
  out << fmt::format("nus_conditional [1] = {} {}\n", r.nus_conditional[0],
                     r.nus_conditional[1]);
  out << fmt::format("t_tot [1] = {}\n", r.totals.t_tot);
  out << fmt::format("epsilon_tot [SNU] = {}\n", r.totals.epsilon_tot);
  if (!cfg.output.json.empty()) {
    write_text_file(cfg.output.json, to_json(r, cfg));
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, int threads) {
  if (!cfg.sweep) {
    throw ConfigError("missing [sweep] block in config");
  }
  const auto cells = keyrate_grid(cfg.grid_for(*cfg.sweep), threads);
  const int failed = cell_failures(cells);
  emit(cfg, out, to_csv(cells), to_json(cells, cfg),
       heatmap_svg(cells, params_hash(cfg, Subcommand::sweep)),
       fmt::format("sweep: {} cells, {} failed\n", cells.size(), failed));
  return failed ? 4 : 0;
}

int cmd_tolerance(const RunConfig& cfg, std::ostream& out, int threads) {
  if (!cfg.tolerance) {
    throw ConfigError("missing [tolerance] block in config");
  }
  const auto cells = tolerance_grid(cfg.grid_for(cfg.tolerance->axes),
                                    cfg.tolerance->eps_max, threads);
  const int failed = cell_failures(cells);
  emit(cfg, out, to_csv(cells), to_json(cells, cfg),
       heatmap_svg(cells, params_hash(cfg, Subcommand::tolerance)),
       fmt::format("tolerance: {} cells, {} failed\n", cells.size(), failed));
  return failed ? 4 : 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.compare) {
    throw ConfigError("missing [compare] block in config");
  }
  std::vector<CompareRow> rows;
  for (double loss : cfg.compare->fiber_losses_db) {
    const auto batch =
        compare_point_to_point(loss, cfg.compare->onu_counts, cfg.params);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  emit(cfg, out, to_csv(rows), to_json(rows, cfg),
       compare_svg(rows, params_hash(cfg, Subcommand::compare)),
       fmt::format("compare: {} rows\n", rows.size()));
  return 0;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out, int threads) {
  if (!cfg.optimize) {
    throw ConfigError("missing [optimize] block in config");
  }
  const auto cells = optimize_grid(cfg.grid_for(cfg.optimize->axes),
                                   cfg.optimize->bracket, threads);
  const int failed = cell_failures(cells);
  emit(cfg, out, to_csv(cells), to_json(cells, cfg),
       optimize_svg(cells, params_hash(cfg, Subcommand::optimize)),
       fmt::format("optimize: {} cells, {} failed\n", cells.size(), failed));
  return failed ? 4 : 0;
}

int cmd_mc(const RunConfig& cfg, std::ostream& out, int threads) {
  if (!cfg.mc) {
    throw ConfigError("missing [mc] block in config");
  }
  const McDataset ds =
      simulate(cfg.params, cfg.mc->n_samples, cfg.mc->seed, threads);
  const McValidateReport report = validate(ds, McTolerances{}, threads);
  emit(cfg, out, to_csv(ds), to_json(report, ds, cfg), "",
       fmt::format("mc: {} samples, validation {}\n", ds.n_samples,
                   report.all_pass ? "passed" : "FAILED"));
  return 0;
}

}  // namespace

int run_command(Subcommand cmd, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  try {
    const int threads = resolve_threads(cfg.threads);
    switch (cmd) {
      case Subcommand::keyrate: return cmd_keyrate(cfg, out);
      case Subcommand::sweep: return cmd_sweep(cfg, out, threads);
      case Subcommand::tolerance: return cmd_tolerance(cfg, out, threads);
      case Subcommand::compare: return cmd_compare(cfg, out);
      case Subcommand::optimize: return cmd_optimize(cfg, out, threads);
      case Subcommand::mc: return cmd_mc(cfg, out, threads);
    }
    throw ConfigError("unknown subcommand");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnphysicalStateError& e) {
    err << "unphysical state: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cvqkd
