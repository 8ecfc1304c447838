#include "cvqkd/csv.hpp"

#include <fmt/format.h>

#include <fstream>

#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

double denormalize_zero(double x) { return x == 0.0 ? 0.0 : x; }

std::string g12(double x) {
  return fmt::format("{:.12g}", denormalize_zero(x));
}

std::string exact(double x) {
  return fmt::format("{}", denormalize_zero(x));
}

// Error text shares a row with numeric cells; strip the CSV metacharacters.
std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

}  // namespace

std::string to_csv(const std::vector<GridCell>& cells) {
  std::string out =
      "distance [km],n_onus [1],t_tot [1],epsilon_tot [SNU],"
      "mutual_information [bit/symbol],holevo [bit/symbol],"
      "key_rate [bit/symbol],key_rate_clamped [bit/symbol],error [text]\n";
  for (const auto& cell : cells) {
    if (cell.report) {
      const KeyRateReport& r = *cell.report;
      out += fmt::format("{},{},{},{},{},{},{},{},\n", g12(cell.distance_km),
                         cell.n_onus, g12(r.totals.t_tot),
                         g12(r.totals.epsilon_tot),
                         g12(r.mutual_information_bits), g12(r.holevo_bits),
                         g12(r.key_rate_bits), g12(r.key_rate_clamped));
    } else {
      out += fmt::format("{},{},,,,,,,{}\n", g12(cell.distance_km),
                         cell.n_onus, sanitize(cell.error));
    }
  }
  return out;
}

std::string to_csv(const std::vector<ToleranceCell>& cells) {
  std::string out =
      "distance [km],n_onus [1],eps_star [SNU],below_threshold [flag],"
      "error [text]\n";
  for (const auto& cell : cells) {
    if (cell.result) {
      out += fmt::format("{},{},{},{},\n", g12(cell.distance_km), cell.n_onus,
                         g12(cell.result->eps_star),
                         cell.result->below_threshold ? 1 : 0);
    } else {
      out += fmt::format("{},{},,,{}\n", g12(cell.distance_km), cell.n_onus,
                         sanitize(cell.error));
    }
  }
  return out;
}

std::string to_csv(const std::vector<CompareRow>& rows) {
  std::string out =
      "fiber_loss [dB],n_onus [1],key_rate_downstream [bit/symbol],"
      "key_rate_ptp [bit/symbol],ratio [percent],ratio_defined [flag]\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", g12(row.fiber_loss_db),
                       row.n_onus, g12(row.key_rate_downstream),
                       g12(row.key_rate_ptp),
                       row.ratio_percent ? g12(*row.ratio_percent) : "",
                       row.ratio_percent ? 1 : 0);
  }
  return out;
}

std::string to_csv(const std::vector<OptimizeCell>& cells) {
  std::string out =
      "distance [km],n_onus [1],v_mod_star [SNU],key_rate_star [bit/symbol],"
      "fallback [flag],error [text]\n";
  for (const auto& cell : cells) {
    if (cell.result) {
      out += fmt::format("{},{},{},{},{},\n", g12(cell.distance_km),
                         cell.n_onus, g12(cell.result->v_mod_star),
                         g12(cell.result->key_rate_star),
                         cell.result->used_fallback ? 1 : 0);
    } else {
      out += fmt::format("{},{},,,,{}\n", g12(cell.distance_km), cell.n_onus,
                         sanitize(cell.error));
    }
  }
  return out;
}

std::string to_csv(const McDataset& ds) {
  std::string out =
      "index [1],alice_x [SNU^0.5],alice_p [SNU^0.5],onu_x [SNU^0.5]\n";
  for (std::size_t i = 0; i < ds.n_samples; ++i) {
    out += fmt::format("{},{},{},{}\n", i, exact(ds.alice_x[i]),
                       exact(ds.alice_p[i]), exact(ds.onu_x[i]));
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError(fmt::format("cannot open {} for writing", path));
  }
  out << content;
  if (!out) {
    throw ConfigError(fmt::format("write to {} failed", path));
  }
}

}  // namespace cvqkd
