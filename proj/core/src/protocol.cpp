#include "cvqkd/protocol.hpp"

#include <fmt/format.h>

#include <cmath>
#include <utility>

namespace cvqkd {

double ProtocolParams::epsilon_tot() const {
  double total = 0.0;
  for (double e : epsilon_segments) total += e;
  return total;
}

void ProtocolParams::validate() const {
  if (!(v >= 1.0)) {
    throw ConfigError(fmt::format("V must satisfy V >= 1, got {}", v));
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ConfigError(
        fmt::format("beta must lie in (0, 1], got {}", beta));
  }
  if (!(eta_d > 0.0 && eta_d <= 1.0)) {
    throw ConfigError(
        fmt::format("eta_d must lie in (0, 1], got {}", eta_d));
  }
  if (!(eta_e > 0.0 && eta_e <= 1.0)) {
    throw ConfigError(
        fmt::format("eta_e must lie in (0, 1], got {}", eta_e));
  }
  if (!(alpha_db_per_km >= 0.0)) {
    throw ConfigError(fmt::format("alpha_db_per_km must be >= 0, got {}",
                                  alpha_db_per_km));
  }
  if (!(distance_km >= 0.0)) {
    throw ConfigError(
        fmt::format("distance_km must be >= 0, got {}", distance_km));
  }
  if (n_onus < 1) {
    throw ConfigError(fmt::format("n_onus must be >= 1, got {}", n_onus));
  }
  if (epsilon_segments.empty()) {
    throw ConfigError("epsilon_segments must hold at least one value");
  }
  for (double e : epsilon_segments) {
    if (!(e >= 0.0)) {
      throw ConfigError(
          fmt::format("excess-noise segments must be >= 0, got {}", e));
    }
  }
  if (splitter_model == SplitterModel::explicit_eta &&
      !(eta_odn > 0.0 && eta_odn <= 1.0)) {
    throw ConfigError(
        fmt::format("explicit eta_odn must lie in (0, 1], got {}", eta_odn));
  }
}

double splitter_transmittance(const ProtocolParams& params) {
  if (params.n_onus < 1) {
    throw ConfigError(
        fmt::format("n_onus must be >= 1, got {}", params.n_onus));
  }
  if (params.splitter_model == SplitterModel::explicit_eta) {
    if (!(params.eta_odn > 0.0 && params.eta_odn <= 1.0)) {
      throw ConfigError(fmt::format("explicit eta_odn must lie in (0, 1], got {}",
                                    params.eta_odn));
    }
    return params.eta_odn;
  }
  return 1.0 / static_cast<double>(params.n_onus);
}

ChannelTotals collapse_channel(const ProtocolParams& params) {
  params.validate();
  const double fiber =
      std::pow(10.0, -params.alpha_db_per_km * params.distance_km / 10.0);
  return ChannelTotals{fiber * splitter_transmittance(params) * params.eta_e,
                       params.epsilon_tot()};
}

CovarianceMatrix build_ab_covariance(double v, const ChannelTotals& totals) {
  if (v < 1.0) {
    throw ConfigError(fmt::format("V must satisfy V >= 1, got {}", v));
  }
  const double c = std::sqrt(totals.t_tot * (v * v - 1.0));
  const double b = totals.t_tot * (v - 1.0 + totals.epsilon_tot) + 1.0;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
  g(0, 0) = g(1, 1) = v;
  g(2, 2) = g(3, 3) = b;
  g(0, 2) = g(2, 0) = c;
  g(1, 3) = g(3, 1) = -c;
  CovarianceMatrix out(std::move(g), {"A", "B'2"});
  symplectic_eigenvalues(out);  // physicality gate
  return out;
}

CovarianceMatrix build_network_covariance(double v, double eta_d,
                                          const ChannelTotals& totals) {
  const CovarianceMatrix ab = build_ab_covariance(v, totals);
  const CovarianceMatrix mixed =
      beamsplitter_transform(ab, ab.mode_index("B'2"), eta_d, "D2");
  // The transmitted output of B'2 is the detected mode C1.
  CovarianceMatrix out(mixed.entries(), {"A", "C1", "D2"});
  symplectic_eigenvalues(out);  // physicality gate
  return out;
}

CovarianceMatrix build_network_covariance(const ProtocolParams& params) {
  params.validate();
  return build_network_covariance(params.v, params.eta_d,
                                  collapse_channel(params));
}

ProtocolParams point_to_point_params(ProtocolParams params) {
  params.n_onus = 1;
  params.splitter_model = SplitterModel::ideal_1_over_n;
  return params;
}

}  // namespace cvqkd
