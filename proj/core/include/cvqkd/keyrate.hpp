#pragma once

#include <array>

#include "cvqkd/protocol.hpp"

namespace cvqkd {

struct KeyRateReport {
  double mutual_information_bits = 0.0;  // I_{A C1}
  double holevo_bits = 0.0;              // chi_{E' C1}
  double key_rate_bits = 0.0;            // K = beta * I - chi, may be negative
  double key_rate_clamped = 0.0;         // max(K, 0)
  std::array<double, 3> nus_joint{};     // spectrum of gamma_{A C1 D2}
  std::array<double, 2> nus_conditional{};  // spectrum of gamma_{A D2 | x_C1}
  ChannelTotals totals{};
};

// I = 1/2 log2((V_A + 1) / (V_A|C1 + 1)) on the x quadratures of the modes
// labeled A and C1; the +1 terms encode Alice's heterodyne vacuum and the
// conditional variance uses the squared covariance.
double mutual_information(const CovarianceMatrix& gamma);

// chi = S(gamma_{A C1 D2}) - S(gamma conditioned on an x homodyne of C1);
// Eve purifies the global state and the trusted detector-loss mode D2
// stays inside the conditional entropy.
double holevo_bound(const CovarianceMatrix& gamma);

// Full evaluation; reverse reconciliation with efficiency beta. The raw
// key rate is never clamped silently; the report carries both values.
KeyRateReport secret_key_rate(const ProtocolParams& params);
KeyRateReport secret_key_rate_from_totals(double v, double beta, double eta_d,
                                          const ChannelTotals& totals);

}  // namespace cvqkd
