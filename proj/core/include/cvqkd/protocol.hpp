#pragma once

#include <vector>

#include "cvqkd/covariance.hpp"

namespace cvqkd {

enum class SplitterModel { ideal_1_over_n, explicit_eta };

// Collapsed channel per the multiplicative-transmittance / additive-noise
// rule. T_tot includes fiber, splitter and eta_e; epsilon_tot is referred
// to the channel input.
struct ChannelTotals {
  double t_tot = 1.0;
  double epsilon_tot = 0.0;
};

struct ProtocolParams {
  double v = 5.0;                 // EPR variance, SNU; V = V_mod + 1
  double beta = 0.956;            // reconciliation efficiency
  double eta_d = 0.6;             // detection efficiency
  double eta_e = 0.99;            // electronic-noise BS transmissivity
  double alpha_db_per_km = 0.2;   // fiber loss coefficient
  double distance_km = 10.0;      // total OLT -> ONU fiber length
  int n_onus = 4;                 // 1 means point-to-point, no splitter
  std::vector<double> epsilon_segments{0.05};  // SNU, channel input
  SplitterModel splitter_model = SplitterModel::ideal_1_over_n;
  double eta_odn = 1.0;           // used only by the explicit splitter model

  double v_mod() const { return v - 1.0; }
  void set_v_mod(double v_mod) { v = v_mod + 1.0; }
  double epsilon_tot() const;

  // Throws ConfigError naming the violated invariant.
  void validate() const;
};

double splitter_transmittance(const ProtocolParams& params);

ChannelTotals collapse_channel(const ProtocolParams& params);

// Two-mode matrix of modes (A, B'2): diag(V I, [T(V-1+eps)+1] I) with
// sqrt(T(V^2-1)) sigma_z off-diagonal blocks. Physicality checked.
CovarianceMatrix build_ab_covariance(double v, const ChannelTotals& totals);

// Three-mode matrix (A, C1, D2): receiver beamsplitter of transmissivity
// eta_d applied to B'2 with a vacuum ancilla. Physicality checked.
CovarianceMatrix build_network_covariance(double v, double eta_d,
                                          const ChannelTotals& totals);
CovarianceMatrix build_network_covariance(const ProtocolParams& params);

// Copy with the splitter removed (n_onus = 1, ideal model), the blue-bar
// reference configuration.
ProtocolParams point_to_point_params(ProtocolParams params);

}  // namespace cvqkd
