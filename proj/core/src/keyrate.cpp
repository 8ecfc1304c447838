#include "cvqkd/keyrate.hpp"

#include <fmt/format.h>

#include <cmath>

namespace cvqkd {

namespace {

struct HolevoParts {
  double chi;
  std::vector<double> nus_joint;
  std::vector<double> nus_conditional;
};

HolevoParts holevo_parts(const CovarianceMatrix& gamma) {
  HolevoParts parts;
  parts.nus_joint = symplectic_eigenvalues(gamma);
  const CovarianceMatrix conditional =
      homodyne_condition(gamma, gamma.mode_index("C1"), Quadrature::x);
  parts.nus_conditional = symplectic_eigenvalues(conditional);
  double joint = 0.0, cond = 0.0;
  for (double nu : parts.nus_joint) joint += g_bits(nu);
  for (double nu : parts.nus_conditional) cond += g_bits(nu);
  parts.chi = joint - cond;
  return parts;
}

}  // namespace

double mutual_information(const CovarianceMatrix& gamma) {
  const int a = gamma.mode_index("A");
  const int c = gamma.mode_index("C1");
  const double v_a = gamma(2 * a, 2 * a);
  const double v_c = gamma(2 * c, 2 * c);
  const double cov = gamma(2 * a, 2 * c);
  if (v_a <= 0.0 || v_c <= 0.0) {
    throw NumericError(fmt::format(
        "degenerate x-quadrature variance: V_A = {}, V_C1 = {}", v_a, v_c));
  }
  const double v_cond = v_a - cov * cov / v_c;
  if (v_cond < -1e-9) {
    throw NumericError(fmt::format(
        "conditional variance {} is negative beyond tolerance", v_cond));
  }
  return 0.5 * std::log2((v_a + 1.0) / (v_cond + 1.0));
}

double holevo_bound(const CovarianceMatrix& gamma) {
  return holevo_parts(gamma).chi;
}

KeyRateReport secret_key_rate_from_totals(double v, double beta, double eta_d,
                                          const ChannelTotals& totals) {
  const CovarianceMatrix gamma =
      build_network_covariance(v, eta_d, totals);
  KeyRateReport report;
  report.totals = totals;
  report.mutual_information_bits = mutual_information(gamma);
  const HolevoParts parts = holevo_parts(gamma);
  report.holevo_bits = parts.chi;
  for (int k = 0; k < 3; ++k) report.nus_joint[k] = parts.nus_joint[k];
  for (int k = 0; k < 2; ++k) {
    report.nus_conditional[k] = parts.nus_conditional[k];
  }
  report.key_rate_bits =
      beta * report.mutual_information_bits - report.holevo_bits;
  report.key_rate_clamped = std::max(report.key_rate_bits, 0.0);
  return report;
}

KeyRateReport secret_key_rate(const ProtocolParams& params) {
  params.validate();
  return secret_key_rate_from_totals(params.v, params.beta, params.eta_d,
                                     collapse_channel(params));
}

}  // namespace cvqkd
