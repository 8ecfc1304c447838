#include "cvqkd/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "cvqkd/errors.hpp"
#include "cvqkd/parallel.hpp"

namespace cvqkd {

namespace {

template <typename T>
void require_increasing(const std::vector<T>& values, const char* name) {
  if (values.empty()) {
    throw ConfigError(fmt::format("{} axis is empty", name));
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw ConfigError(
          fmt::format("{} axis is not strictly increasing at position {}",
                      name, i));
    }
  }
}

// Runs one evaluation per (d, n) cell; exceptions become the cell's error
// string with the coordinates attached.
template <typename Cell, typename Eval>
std::vector<Cell> run_grid(const SweepGrid& grid, int threads, Eval eval) {
  grid.validate();
  const std::size_t nd = grid.distances_km.size();
  const std::size_t nn = grid.onu_counts.size();
  std::vector<Cell> cells(nd * nn);
  parallel_for(nd * nn, threads, [&](std::size_t idx) {
    const std::size_t di = idx / nn;
    const std::size_t ni = idx % nn;
    Cell& cell = cells[idx];
    cell.distance_km = grid.distances_km[di];
    cell.n_onus = grid.onu_counts[ni];
    ProtocolParams params = grid.base_params;
    params.distance_km = cell.distance_km;
    params.n_onus = cell.n_onus;
    try {
      eval(params, cell);
    } catch (const std::exception& e) {
      cell.error = fmt::format("cell d={} n={}: {}", cell.distance_km,
                               cell.n_onus, e.what());
    }
  });
  return cells;
}

double golden_section_max(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void SweepGrid::validate() const {
  require_increasing(distances_km, "distance");
  require_increasing(onu_counts, "onu-count");
  if (onu_counts.front() < 1) {
    throw ConfigError("onu-count axis contains values below 1");
  }
  base_params.validate();
}

SweepGrid SweepGrid::defaults() {
  SweepGrid grid;
  for (int d = 0; d <= 30; ++d) grid.distances_km.push_back(d);
  for (int n = 2; n <= 64; ++n) grid.onu_counts.push_back(n);
  return grid;
}

std::vector<GridCell> keyrate_grid(const SweepGrid& grid, int threads) {
  return run_grid<GridCell>(grid, threads,
                            [](const ProtocolParams& params, GridCell& cell) {
                              cell.report = secret_key_rate(params);
                            });
}

ToleranceResult tolerable_excess_noise(const ProtocolParams& params,
                                       double eps_max) {
  if (!(eps_max > 0.0)) {
    throw ConfigError(fmt::format("eps_max must be positive; got {}", eps_max));
  }
  ProtocolParams base = params;
  base.epsilon_segments = {0.0};
  base.validate();
  const ChannelTotals zero_eps = collapse_channel(base);
  const auto rate_at = [&](double eps) {
    return secret_key_rate_from_totals(base.v, base.beta, base.eta_d,
                                       ChannelTotals{zero_eps.t_tot, eps})
        .key_rate_bits;
  };
  if (rate_at(0.0) <= 0.0) return {0.0, true};
  if (rate_at(eps_max) > 0.0) {
    throw NumericError(fmt::format(
        "bracket too small: raw key rate at eps_max={} is still positive; "
        "widen eps_max",
        eps_max));
  }
  double lo = 0.0;
  double hi = eps_max;
  for (int iter = 0; iter < 200 && hi - lo > 1e-9; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (rate_at(mid) > 0.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), false};
}

std::vector<ToleranceCell> tolerance_grid(const SweepGrid& grid,
                                          double eps_max, int threads) {
  return run_grid<ToleranceCell>(
      grid, threads, [eps_max](const ProtocolParams& params,
                               ToleranceCell& cell) {
        cell.result = tolerable_excess_noise(params, eps_max);
      });
}

std::vector<CompareRow> compare_point_to_point(
    double fiber_loss_db, const std::vector<int>& onu_counts,
    const ProtocolParams& base) {
  if (fiber_loss_db < 0.0) {
    throw ConfigError(
        fmt::format("fiber loss must be >= 0 dB; got {}", fiber_loss_db));
  }
  if (onu_counts.empty()) {
    throw ConfigError("onu-count list is empty");
  }
  base.validate();
  const double eps_tot = base.epsilon_tot();
  const double fiber = std::pow(10.0, -fiber_loss_db / 10.0);
  const double t_ptp = fiber * base.eta_e;
  const double k_ptp =
      secret_key_rate_from_totals(base.v, base.beta, base.eta_d,
                                  ChannelTotals{t_ptp, eps_tot})
          .key_rate_bits;
  std::vector<CompareRow> rows;
  rows.reserve(onu_counts.size());
  for (int n : onu_counts) {
    if (n < 1) {
      throw ConfigError(fmt::format("onu count must be >= 1; got {}", n));
    }
    CompareRow row;
    row.fiber_loss_db = fiber_loss_db;
    row.n_onus = n;
    row.key_rate_ptp = k_ptp;
    row.key_rate_downstream =
        secret_key_rate_from_totals(base.v, base.beta, base.eta_d,
                                    ChannelTotals{t_ptp / n, eps_tot})
            .key_rate_bits;
    if (k_ptp > 0.0) {
      row.ratio_percent = row.key_rate_downstream / k_ptp * 100.0;
    }
    rows.push_back(row);
  }
  return rows;
}

ScalarMaxResult maximize_log_spaced(const std::function<double(double)>& f,
                                    double lo, double hi, int coarse_points,
                                    double tol, int fine_points) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw ConfigError(
        fmt::format("bracket [{}:{}] must satisfy 0 < lo < hi", lo, hi));
  }
  if (coarse_points < 4 || fine_points < coarse_points) {
    throw ConfigError("scan point counts are out of range");
  }
  const auto scan = [&](int n) {
    std::vector<double> xs(n), fs(n);
    const double ratio = hi / lo;
    for (int i = 0; i < n; ++i) {
      xs[i] = lo * std::pow(ratio, static_cast<double>(i) / (n - 1));
      fs[i] = f(xs[i]);
    }
    return std::pair(std::move(xs), std::move(fs));
  };

  auto [xs, fs] = scan(coarse_points);
  int interior_maxima = 0;
  for (int i = 1; i + 1 < coarse_points; ++i) {
    if (fs[i] > fs[i - 1] && fs[i] > fs[i + 1]) ++interior_maxima;
  }
  ScalarMaxResult result;
  if (interior_maxima > 1) {
    result.used_fallback = true;
    std::tie(xs, fs) = scan(fine_points);
  }
  const int n = static_cast<int>(xs.size());
  const int best = static_cast<int>(
      std::max_element(fs.begin(), fs.end()) - fs.begin());
  const double a = xs[std::max(best - 1, 0)];
  const double b = xs[std::min(best + 1, n - 1)];
  result.x = golden_section_max(f, a, b, tol);
  result.fx = f(result.x);
  return result;
}

OptimizeResult optimal_modulation_variance(const ProtocolParams& params,
                                           Bracket bracket) {
  params.validate();
  const ChannelTotals totals = collapse_channel(params);
  const auto rate_at = [&](double v_mod) {
    return secret_key_rate_from_totals(v_mod + 1.0, params.beta, params.eta_d,
                                       totals)
        .key_rate_bits;
  };
  const ScalarMaxResult best =
      maximize_log_spaced(rate_at, bracket.lo, bracket.hi);
  return {best.x, best.fx, best.used_fallback};
}

std::vector<OptimizeCell> optimize_grid(const SweepGrid& grid, Bracket bracket,
                                        int threads) {
  return run_grid<OptimizeCell>(
      grid, threads, [bracket](const ProtocolParams& params,
                               OptimizeCell& cell) {
        cell.result = optimal_modulation_variance(params, bracket);
      });
}

}  // namespace cvqkd
