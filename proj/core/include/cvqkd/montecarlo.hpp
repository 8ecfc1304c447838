#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvqkd/keyrate.hpp"

namespace cvqkd {

// Prepare-and-measure sampling of the collapsed channel: Alice's heterodyne
// record (both quadratures) and the activated ONU's x homodyne record.
struct McDataset {
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  std::vector<double> alice_x;
  std::vector<double> alice_p;
  std::vector<double> onu_x;
  ProtocolParams params_used;
};

struct McEstimate {
  double t_hat = 0.0;
  double eps_hat = 0.0;
  double t_se = 0.0;    // jackknife over 100 contiguous blocks
  double eps_se = 0.0;
};

struct McTolerances {
  double moment_sigmas = 5.0;
  double estimate_sigmas = 3.0;
  double key_rate_abs_bits = 0.01;
};

struct McCheck {
  std::string name;
  double sampled = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // absolute bound on |sampled - expected|
  bool pass = false;
};

struct McValidateReport {
  std::vector<McCheck> checks;
  McEstimate estimate;
  double key_rate_plugin = 0.0;
  double key_rate_truth = 0.0;
  bool all_pass = false;
};

// onu_x = sqrt(eta_d T_tot) alice_x + z, z ~ Normal(0, 1 + eta_d T_tot
// eps_tot). Sample i depends only on (seed, i), so any thread count yields
// the same dataset.
McDataset simulate(const ProtocolParams& params, std::size_t n_samples,
                   std::uint64_t seed, int threads = 1);

// T_hat = cov(alice_x, onu_x)^2 / (eta_d V_mod^2), eps_hat from var(onu_x);
// sample statistics use the n-1 denominator. Throws NumericError when the
// estimate degenerates (T_hat <= 0 or non-finite).
McEstimate estimate(const McDataset& ds, double eta_d, double v_mod);

// Compares sampled x moments against the analytic covariance entries and
// the plug-in key rate against ground truth. Failures are report entries,
// never exceptions.
McValidateReport validate(const McDataset& ds, McTolerances tol = {},
                          int threads = 1);
McValidateReport validate(const ProtocolParams& params, std::size_t n_samples,
                          std::uint64_t seed, McTolerances tol = {},
                          int threads = 1);

}  // namespace cvqkd
