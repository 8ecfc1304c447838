#include "cvqkd/montecarlo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cvqkd/errors.hpp"
#include "cvqkd/parallel.hpp"
#include "cvqkd/rng.hpp"

namespace cvqkd {

namespace {

// Partial-sum granularity. Sums are accumulated serially inside each block
// and folded in block order, so every thread count produces the same bits.
constexpr std::size_t kSumBlock = 8192;

template <std::size_t N, typename Fn>
std::array<double, N> blockwise_sums(std::size_t n, int threads, Fn&& term) {
  const std::size_t blocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<std::array<double, N>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::array<double, N> acc{};
    const std::size_t hi = std::min(n, (b + 1) * kSumBlock);
    for (std::size_t i = b * kSumBlock; i < hi; ++i) term(i, acc);
    partial[b] = acc;
  });
  std::array<double, N> total{};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < N; ++k) total[k] += p[k];
  }
  return total;
}

// count, sum a, sum o, sum a^2, sum o^2, sum a*o
using MomentSums = std::array<double, 6>;

struct PairEstimate {
  double t = 0.0;
  double eps = 0.0;
};

PairEstimate estimator_from_sums(const MomentSums& m, double eta_d,
                                 double v_mod) {
  const double cnt = m[0];
  const double mean_a = m[1] / cnt;
  const double mean_o = m[2] / cnt;
  const double cov = (m[5] - cnt * mean_a * mean_o) / (cnt - 1.0);
  const double var_o = (m[4] - cnt * mean_o * mean_o) / (cnt - 1.0);
  const double t = cov * cov / (eta_d * v_mod * v_mod);
  if (!std::isfinite(t) || t <= 0.0) {
    throw NumericError(
        fmt::format("estimation degenerate: T_hat = {} is not positive", t));
  }
  return {t, (var_o - eta_d * t * v_mod - 1.0) / (eta_d * t)};
}

}  // namespace

McDataset simulate(const ProtocolParams& params, std::size_t n_samples,
                   std::uint64_t seed, int threads) {
  if (n_samples < 2) {
    throw ConfigError(
        fmt::format("n_samples must be >= 2; got {}", n_samples));
  }
  params.validate();
  const ChannelTotals totals = collapse_channel(params);
  McDataset ds;
  ds.seed = seed;
  ds.n_samples = n_samples;
  ds.params_used = params;
  ds.alice_x.resize(n_samples);
  ds.alice_p.resize(n_samples);
  ds.onu_x.resize(n_samples);
  const double amp = std::sqrt(params.v_mod());
  const double gain = std::sqrt(params.eta_d * totals.t_tot);
  const double noise_sd =
      std::sqrt(1.0 + params.eta_d * totals.t_tot * totals.epsilon_tot);
  parallel_for(n_samples, threads, [&](std::size_t i) {
    const NormalPair a = normals_for_index(seed, i, 0);
    const NormalPair z = normals_for_index(seed, i, 1);
    ds.alice_x[i] = amp * a.z0;
    ds.alice_p[i] = amp * a.z1;
    ds.onu_x[i] = gain * ds.alice_x[i] + noise_sd * z.z0;
  });
  return ds;
}

McEstimate estimate(const McDataset& ds, double eta_d, double v_mod) {
  const std::size_t n = ds.n_samples;
  if (n < 100) {
    throw ConfigError(
        fmt::format("estimate needs n_samples >= 100; got {}", n));
  }
  if (ds.alice_x.size() != n || ds.onu_x.size() != n) {
    throw ConfigError("dataset arrays do not match n_samples");
  }
  if (!(eta_d > 0.0 && eta_d <= 1.0)) {
    throw ConfigError(fmt::format("eta_d must lie in (0, 1]; got {}", eta_d));
  }
  if (!(v_mod > 0.0)) {
    throw NumericError(
        fmt::format("estimation degenerate: V_mod = {} is not positive",
                    v_mod));
  }

  constexpr std::size_t kBlocks = 100;  // jackknife partition
  std::array<MomentSums, kBlocks> block{};
  MomentSums total{};
  for (std::size_t b = 0; b < kBlocks; ++b) {
    const std::size_t lo = b * n / kBlocks;
    const std::size_t hi = (b + 1) * n / kBlocks;
    MomentSums& m = block[b];
    for (std::size_t i = lo; i < hi; ++i) {
      const double a = ds.alice_x[i];
      const double o = ds.onu_x[i];
      m[0] += 1.0;
      m[1] += a;
      m[2] += o;
      m[3] += a * a;
      m[4] += o * o;
      m[5] += a * o;
    }
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += m[k];
  }

  const PairEstimate full = estimator_from_sums(total, eta_d, v_mod);
  std::array<double, kBlocks> t_del{}, e_del{};
  double t_mean = 0.0, e_mean = 0.0;
  for (std::size_t b = 0; b < kBlocks; ++b) {
    MomentSums rest;
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] = total[k] - block[b][k];
    const PairEstimate del = estimator_from_sums(rest, eta_d, v_mod);
    t_del[b] = del.t;
    e_del[b] = del.eps;
    t_mean += del.t;
    e_mean += del.eps;
  }
  t_mean /= kBlocks;
  e_mean /= kBlocks;
  double t_var = 0.0, e_var = 0.0;
  for (std::size_t b = 0; b < kBlocks; ++b) {
    t_var += (t_del[b] - t_mean) * (t_del[b] - t_mean);
    e_var += (e_del[b] - e_mean) * (e_del[b] - e_mean);
  }
  const double factor = static_cast<double>(kBlocks - 1) / kBlocks;
  return {full.t, full.eps, std::sqrt(factor * t_var),
          std::sqrt(factor * e_var)};
}

McValidateReport validate(const McDataset& ds, McTolerances tol, int threads) {
  const ProtocolParams& params = ds.params_used;
  params.validate();
  const double v_mod = params.v_mod();
  if (!(v_mod > 0.0)) {
    throw ConfigError(
        fmt::format("validate requires V_mod > 0; got {}", v_mod));
  }
  const std::size_t n_samples = ds.n_samples;
  if (ds.alice_x.size() != n_samples || ds.onu_x.size() != n_samples) {
    throw ConfigError("dataset arrays do not match n_samples");
  }
  const ChannelTotals totals = collapse_channel(params);
  const CovarianceMatrix gamma = build_network_covariance(params);

  // Raw second moments and the fourth-moment sums behind their standard
  // errors: SE(<q>) = sqrt((<q^2> - <q>^2) / n) for q in {a^2, a o, o^2}.
  const auto sums = blockwise_sums<6>(
      n_samples, threads, [&](std::size_t i, std::array<double, 6>& acc) {
        const double a = ds.alice_x[i];
        const double o = ds.onu_x[i];
        acc[0] += a * a;
        acc[1] += o * o;
        acc[2] += a * o;
        acc[3] += a * a * a * a;
        acc[4] += o * o * o * o;
        acc[5] += a * a * o * o;
      });
  const double nd = static_cast<double>(n_samples);
  const double m_aa = sums[0] / nd;
  const double m_oo = sums[1] / nd;
  const double m_ao = sums[2] / nd;
  const double se_aa = std::sqrt((sums[3] / nd - m_aa * m_aa) / nd);
  const double se_oo = std::sqrt((sums[4] / nd - m_oo * m_oo) / nd);
  const double se_ao = std::sqrt((sums[5] / nd - m_ao * m_ao) / nd);

  // PM records map onto the entanglement-based matrix: Alice's variance
  // gains her vacuum unit and the cross term the sqrt((V_mod+2)/V_mod)
  // heterodyne factor.
  const double ac_scale = std::sqrt((v_mod + 2.0) / v_mod);

  McValidateReport report;
  const auto add_check = [&](std::string name, double sampled, double expected,
                             double tolerance) {
    const bool pass = std::isfinite(sampled) &&
                      std::abs(sampled - expected) <= tolerance;
    report.checks.push_back(
        {std::move(name), sampled, expected, tolerance, pass});
  };

  add_check("moment <x_A^2>", m_aa + 1.0, gamma(0, 0),
            tol.moment_sigmas * se_aa);
  add_check("moment <x_A x_C1>", ac_scale * m_ao, gamma(0, 2),
            tol.moment_sigmas * ac_scale * se_ao);
  add_check("moment <x_C1^2>", m_oo, gamma(2, 2), tol.moment_sigmas * se_oo);

  report.key_rate_truth =
      secret_key_rate_from_totals(params.v, params.beta, params.eta_d, totals)
          .key_rate_bits;
  try {
    report.estimate = estimate(ds, params.eta_d, v_mod);
    add_check("estimate T_tot", report.estimate.t_hat, totals.t_tot,
              tol.estimate_sigmas * report.estimate.t_se);
    add_check("estimate epsilon_tot", report.estimate.eps_hat,
              totals.epsilon_tot, tol.estimate_sigmas * report.estimate.eps_se);
    report.key_rate_plugin =
        secret_key_rate_from_totals(
            params.v, params.beta, params.eta_d,
            ChannelTotals{report.estimate.t_hat, report.estimate.eps_hat})
            .key_rate_bits;
    add_check("plug-in key rate", report.key_rate_plugin,
              report.key_rate_truth, tol.key_rate_abs_bits);
  } catch (const std::exception& e) {
    report.checks.push_back({fmt::format("estimation failed: {}", e.what()),
                             std::numeric_limits<double>::quiet_NaN(), 0.0,
                             0.0, false});
  }

  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const McCheck& c) { return c.pass; });
  return report;
}

McValidateReport validate(const ProtocolParams& params, std::size_t n_samples,
                          std::uint64_t seed, McTolerances tol, int threads) {
  return validate(simulate(params, n_samples, seed, threads), tol, threads);
}

}  // namespace cvqkd
