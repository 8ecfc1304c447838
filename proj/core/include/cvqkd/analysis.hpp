#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvqkd/keyrate.hpp"

namespace cvqkd {

struct SweepGrid {
  std::vector<double> distances_km;
  std::vector<int> onu_counts;
  ProtocolParams base_params;

  // Throws ConfigError: axes non-empty and strictly increasing, counts >= 1.
  void validate() const;

  // d = 0..30 km in 1 km steps, n = 2..64, default params.
  static SweepGrid defaults();
};

// Cells are row-major, distance outer, ONU count inner. A cell holds either
// a report or the error message of the evaluation that failed there.
struct GridCell {
  double distance_km = 0.0;
  int n_onus = 0;
  std::optional<KeyRateReport> report;
  std::string error;
};

std::vector<GridCell> keyrate_grid(const SweepGrid& grid, int threads = 1);

struct ToleranceResult {
  double eps_star = 0.0;
  bool below_threshold = false;  // raw K(0) <= 0, no positive-rate regime
};

// Root of raw K(epsilon_tot = eps) = 0 on [0, eps_max] by bisection; the
// bracket is validated by endpoint signs and K(eps_max) > 0 raises a
// bracket-too-small NumericError. The interval is shrunk well below the
// 1e-5 SNU resolution so |K(eps*)| <= 1e-6 holds at interior roots.
ToleranceResult tolerable_excess_noise(const ProtocolParams& params,
                                       double eps_max = 0.3);

struct ToleranceCell {
  double distance_km = 0.0;
  int n_onus = 0;
  std::optional<ToleranceResult> result;
  std::string error;
};

std::vector<ToleranceCell> tolerance_grid(const SweepGrid& grid,
                                          double eps_max = 0.3,
                                          int threads = 1);

// Downstream uses total loss fiber_loss_db + 10 log10(n) (ideal splitter);
// the point-to-point reference sees fiber_loss_db only. Both inherit the
// remaining base parameters. Rates are raw; the ratio is absent when the
// point-to-point rate is not positive.
struct CompareRow {
  double fiber_loss_db = 0.0;
  int n_onus = 0;
  double key_rate_downstream = 0.0;
  double key_rate_ptp = 0.0;
  std::optional<double> ratio_percent;
};

std::vector<CompareRow> compare_point_to_point(
    double fiber_loss_db, const std::vector<int>& onu_counts,
    const ProtocolParams& base);

struct Bracket {
  double lo = 0.01;  // V_mod, SNU
  double hi = 100.0;
};

struct OptimizeResult {
  double v_mod_star = 0.0;
  double key_rate_star = 0.0;  // raw K at the maximizer
  bool used_fallback = false;  // coarse scan was not unimodal
};

// Maximizes raw K over V_mod: a 64-point log-spaced coarse scan seeds a
// golden-section search (tolerance 1e-4 SNU). More than one strict interior
// local maximum in the scan triggers a 1024-point fine-grid fallback.
OptimizeResult optimal_modulation_variance(const ProtocolParams& params,
                                           Bracket bracket = {});

struct OptimizeCell {
  double distance_km = 0.0;
  int n_onus = 0;
  std::optional<OptimizeResult> result;
  std::string error;
};

std::vector<OptimizeCell> optimize_grid(const SweepGrid& grid,
                                        Bracket bracket = {},
                                        int threads = 1);

// Search strategy on a bare objective, exposed so synthetic profiles can
// exercise the unimodality guard directly.
struct ScalarMaxResult {
  double x = 0.0;
  double fx = 0.0;
  bool used_fallback = false;
};

ScalarMaxResult maximize_log_spaced(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    int coarse_points = 64, double tol = 1e-4,
                                    int fine_points = 1024);

}  // namespace cvqkd
