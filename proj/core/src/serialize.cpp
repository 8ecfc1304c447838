#include "cvqkd/serialize.hpp"

#include <nlohmann/json.hpp>

#include "cvqkd/version.hpp"

namespace cvqkd {

namespace {

using nlohmann::json;

double jnum(double x) { return x == 0.0 ? 0.0 : x; }

json envelope(Subcommand cmd, const RunConfig& cfg) {
  json j;
  j["command"] = subcommand_name(cmd);
  j["config_ini"] = serialize_config(cfg, cmd);
  j["metadata"] = {{"tool_version", std::string(kToolVersion)},
                   {"params_hash", params_hash(cfg, cmd)}};
  return j;
}

json report_json(const KeyRateReport& r) {
  return {{"mutual_information_bits", jnum(r.mutual_information_bits)},
          {"holevo_bits", jnum(r.holevo_bits)},
          {"key_rate_bits", jnum(r.key_rate_bits)},
          {"key_rate_clamped", jnum(r.key_rate_clamped)},
          {"nus_joint",
           {jnum(r.nus_joint[0]), jnum(r.nus_joint[1]), jnum(r.nus_joint[2])}},
          {"nus_conditional",
           {jnum(r.nus_conditional[0]), jnum(r.nus_conditional[1])}},
          {"t_tot", jnum(r.totals.t_tot)},
          {"epsilon_tot", jnum(r.totals.epsilon_tot)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json(const KeyRateReport& report, const RunConfig& cfg) {
  json j = envelope(Subcommand::keyrate, cfg);
  j["results"] = report_json(report);
  return dump(j);
}

std::string to_json(const std::vector<GridCell>& cells, const RunConfig& cfg) {
  json j = envelope(Subcommand::sweep, cfg);
  json rows = json::array();
  for (const auto& cell : cells) {
    json row = {{"distance_km", jnum(cell.distance_km)},
                {"n_onus", cell.n_onus}};
    if (cell.report) {
      row.update(report_json(*cell.report));
    } else {
      row["error"] = cell.error;
    }
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return dump(j);
}

std::string to_json(const std::vector<ToleranceCell>& cells,
                    const RunConfig& cfg) {
  json j = envelope(Subcommand::tolerance, cfg);
  json rows = json::array();
  for (const auto& cell : cells) {
    json row = {{"distance_km", jnum(cell.distance_km)},
                {"n_onus", cell.n_onus}};
    if (cell.result) {
      row["eps_star"] = jnum(cell.result->eps_star);
      row["below_threshold"] = cell.result->below_threshold;
    } else {
      row["error"] = cell.error;
    }
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return dump(j);
}

std::string to_json(const std::vector<CompareRow>& rows,
                    const RunConfig& cfg) {
  json j = envelope(Subcommand::compare, cfg);
  json out = json::array();
  for (const auto& row : rows) {
    json r = {{"fiber_loss_db", jnum(row.fiber_loss_db)},
              {"n_onus", row.n_onus},
              {"key_rate_downstream", jnum(row.key_rate_downstream)},
              {"key_rate_ptp", jnum(row.key_rate_ptp)}};
    if (row.ratio_percent) r["ratio_percent"] = jnum(*row.ratio_percent);
    out.push_back(std::move(r));
  }
  j["results"] = std::move(out);
  return dump(j);
}

std::string to_json(const std::vector<OptimizeCell>& cells,
                    const RunConfig& cfg) {
  json j = envelope(Subcommand::optimize, cfg);
  json rows = json::array();
  for (const auto& cell : cells) {
    json row = {{"distance_km", jnum(cell.distance_km)},
                {"n_onus", cell.n_onus}};
    if (cell.result) {
      row["v_mod_star"] = jnum(cell.result->v_mod_star);
      row["key_rate_star"] = jnum(cell.result->key_rate_star);
      row["fallback"] = cell.result->used_fallback;
    } else {
      row["error"] = cell.error;
    }
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return dump(j);
}

std::string to_json(const McValidateReport& report, const McDataset& ds,
                    const RunConfig& cfg) {
  json j = envelope(Subcommand::mc, cfg);
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"sampled", jnum(c.sampled)},
                      {"expected", jnum(c.expected)},
                      {"tolerance", jnum(c.tolerance)},
                      {"pass", c.pass}});
  }
  j["results"] = {{"seed", ds.seed},
                  {"n_samples", ds.n_samples},
                  {"estimate",
                   {{"t_hat", jnum(report.estimate.t_hat)},
                    {"eps_hat", jnum(report.estimate.eps_hat)},
                    {"t_se", jnum(report.estimate.t_se)},
                    {"eps_se", jnum(report.estimate.eps_se)}}},
                  {"key_rate_plugin", jnum(report.key_rate_plugin)},
                  {"key_rate_truth", jnum(report.key_rate_truth)},
                  {"checks", std::move(checks)},
                  {"all_pass", report.all_pass}};
  return dump(j);
}

}  // namespace cvqkd
