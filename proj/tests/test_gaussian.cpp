#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "cvqkd/covariance.hpp"
#include "cvqkd/errors.hpp"
#include "golden_values.hpp"
#include "oracle_support.hpp"

using namespace cvqkd;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CovarianceMatrix thermal(double nu, const std::string& label) {
  Eigen::MatrixXd m = nu * Eigen::MatrixXd::Identity(2, 2);
  return CovarianceMatrix(m, {label});
}

CovarianceMatrix network_defaults() {
  ChannelTotals totals{golden::kTTotDefaults, 0.05};
  return testsupport::closed_form_network_covariance(5.0, 0.6, totals);
}

// The documented two-mode mixing matrix embedded at (mode m, ancilla last)
// inside an identity of n_modes + 1 modes.
Eigen::MatrixXd embedded_bs(int n_modes, int m, double eta) {
  const int dim = 2 * (n_modes + 1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  const int a = 2 * n_modes;
  const Eigen::Matrix2d i2 = Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * m, 2 * m) = std::sqrt(eta) * i2;
  s.block<2, 2>(2 * m, a) = std::sqrt(1.0 - eta) * i2;
  s.block<2, 2>(a, 2 * m) = -std::sqrt(1.0 - eta) * i2;
  s.block<2, 2>(a, a) = std::sqrt(eta) * i2;
  return s;
}

}  // namespace

TEST_SUITE("gaussian") {

TEST_CASE("two_mode_squeezed entry pattern") {
  const CovarianceMatrix vac = two_mode_squeezed(1.0);
  CHECK(vac.entries().isApprox(Eigen::MatrixXd::Identity(4, 4), 0.0));

  const CovarianceMatrix g = two_mode_squeezed(5.0);
  REQUIRE(g.n_modes() == 2);
  CHECK(g.labels() == std::vector<std::string>{"A", "B"});
  const double c = std::sqrt(24.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(g(i, i) == doctest::Approx(5.0).epsilon(1e-15));
  }
  CHECK(g(0, 2) == doctest::Approx(c).epsilon(1e-15));
  CHECK(g(1, 3) == doctest::Approx(-c).epsilon(1e-15));
  CHECK(g(0, 1) == 0.0);
  CHECK(g(0, 3) == 0.0);

  CHECK_THROWS_AS(two_mode_squeezed(0.5), ConfigError);
}

TEST_CASE("two_mode_squeezed is pure for any V") {
  for (double v : {1.0, 1.5, 5.0, 20.0, 100.0}) {
    const auto nus = symplectic_eigenvalues(two_mode_squeezed(v));
    REQUIRE(nus.size() == 2);
    CHECK(std::abs(nus[0] - 1.0) <= 1e-9);
    CHECK(std::abs(nus[1] - 1.0) <= 1e-9);
  }
}

TEST_CASE("debug rendering matches the golden file") {
  const std::string want =
      read_file(std::string(CVQKD_TEST_DATA) + "/golden/tmsv_v5_debug.txt");
  CHECK(two_mode_squeezed(5.0).debug_string() == want);
}

TEST_CASE("constructor validation") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(4, 4);
  bad(0, 1) = 1e-3;  // asymmetric
  CHECK_THROWS_AS(CovarianceMatrix(bad, {"A", "B"}), ConfigError);

  Eigen::MatrixXd odd = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(CovarianceMatrix(odd, {"A"}), ConfigError);

  Eigen::MatrixXd ok = Eigen::MatrixXd::Identity(4, 4);
  CHECK_THROWS_AS(CovarianceMatrix(ok, {"A"}), ConfigError);  // label count

  const CovarianceMatrix g(ok, {"A", "B"});
  CHECK(g.mode_index("B") == 1);
  CHECK_THROWS_AS(g.mode_index("C1"), ConfigError);
}

TEST_CASE("symplectic form algebra") {
  for (int n : {1, 2, 3}) {
    const Eigen::MatrixXd omega = symplectic_form(n);
    CHECK(omega.transpose().isApprox(-omega, 0.0));
    CHECK((omega * omega)
              .isApprox(-Eigen::MatrixXd::Identity(2 * n, 2 * n), 1e-15));
  }
}

TEST_CASE("beamsplitter limits") {
  const CovarianceMatrix g = two_mode_squeezed(5.0);

  const CovarianceMatrix open = beamsplitter_transform(g, 1, 1.0, "D");
  REQUIRE(open.n_modes() == 3);
  CHECK(open.labels() == std::vector<std::string>{"A", "B", "D"});
  CHECK(open.entries().topLeftCorner(4, 4).isApprox(g.entries(), 1e-15));
  CHECK(open.entries()
            .bottomRightCorner(2, 2)
            .isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-15));
  CHECK(open.entries().topRightCorner(4, 2).norm() == doctest::Approx(0.0));

  const CovarianceMatrix swap = beamsplitter_transform(g, 1, 0.0, "D");
  // Reflective BS: the signal slot holds vacuum, the ancilla the signal
  // (cross terms pick up the Y_0 sign).
  CHECK(swap.entries()
            .block(2, 2, 2, 2)
            .isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-15));
  CHECK(swap.entries()
            .bottomRightCorner(2, 2)
            .isApprox(5.0 * Eigen::MatrixXd::Identity(2, 2), 1e-15));
  CHECK(swap(0, 4) == doctest::Approx(-std::sqrt(24.0)).epsilon(1e-15));
  CHECK(swap(1, 5) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-15));

  CHECK_THROWS_AS(beamsplitter_transform(g, 1, 1.5, "D"), ConfigError);
  CHECK_THROWS_AS(beamsplitter_transform(g, 1, -0.1, "D"), ConfigError);
  CHECK_THROWS_AS(beamsplitter_transform(g, 2, 0.5, "D"), ConfigError);
}

TEST_CASE("beamsplitter matches the direct congruence and preserves the form") {
  std::mt19937_64 gen(71);
  std::uniform_real_distribution<double> ueta(0.0, 1.0);
  std::uniform_real_distribution<double> uv(1.0, 12.0);
  const Eigen::MatrixXd omega3 = symplectic_form(3);

  for (int i = 0; i < 100; ++i) {
    const double eta = ueta(gen);
    const CovarianceMatrix g = two_mode_squeezed(uv(gen));
    const Eigen::MatrixXd s = embedded_bs(2, 1, eta);

    CHECK((s * omega3 * s.transpose() - omega3).cwiseAbs().maxCoeff() <=
          1e-12);

    Eigen::MatrixXd padded = Eigen::MatrixXd::Identity(6, 6);
    padded.topLeftCorner(4, 4) = g.entries();
    const Eigen::MatrixXd expect = s * padded * s.transpose();
    const CovarianceMatrix got = beamsplitter_transform(g, 1, eta, "D");
    CHECK((got.entries() - expect).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("beamsplitter preserves total entropy") {
  std::mt19937_64 gen(72);
  std::uniform_real_distribution<double> ueta(0.0, 1.0);
  std::uniform_real_distribution<double> unu(1.0, 8.0);

  for (int i = 0; i < 100; ++i) {
    // A thermal pair has entropy g(nu1) + g(nu2); the appended ancilla is
    // vacuum, so the transform must keep the total unchanged.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    const double n1 = unu(gen);
    const double n2 = unu(gen);
    m.topLeftCorner(2, 2) = n1 * Eigen::Matrix2d::Identity();
    m.bottomRightCorner(2, 2) = n2 * Eigen::Matrix2d::Identity();
    const CovarianceMatrix g(m, {"A", "B"});

    const double before = von_neumann_entropy_bits(g);
    const double after =
        von_neumann_entropy_bits(beamsplitter_transform(g, 0, ueta(gen), "D"));
    CHECK(std::abs(after - before) <= 1e-9);
  }
}

TEST_CASE("symplectic eigenvalues of reference states") {
  Eigen::MatrixXd vac = Eigen::MatrixXd::Identity(6, 6);
  const auto nus_vac =
      symplectic_eigenvalues(CovarianceMatrix(vac, {"A", "B", "C"}));
  for (double nu : nus_vac) CHECK(nu == 1.0);

  const auto nus_th = symplectic_eigenvalues(thermal(3.0, "A"));
  REQUIRE(nus_th.size() == 1);
  CHECK(nus_th[0] == doctest::Approx(3.0).epsilon(1e-14));

  const auto nus_net = symplectic_eigenvalues(network_defaults());
  REQUIRE(nus_net.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(nus_net[i] - golden::kNusJointDefaults[i]) <= 1e-12);
  }
  CHECK(std::is_sorted(nus_net.rbegin(), nus_net.rend()));
}

TEST_CASE("symplectic eigenvalue clamping and physicality error") {
  const auto clamped = symplectic_eigenvalues(thermal(1.0 - 1e-10, "A"));
  CHECK(clamped[0] == 1.0);

  const auto raw = symplectic_eigenvalues_raw(thermal(1.0 - 1e-10, "A"));
  CHECK(raw[0] == doctest::Approx(1.0 - 1e-10).epsilon(1e-12));

  try {
    symplectic_eigenvalues(thermal(0.5, "A"));
    FAIL("expected UnphysicalStateError");
  } catch (const UnphysicalStateError& e) {
    CHECK(e.nu_min() == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("entropy values") {
  Eigen::MatrixXd vac = Eigen::MatrixXd::Identity(4, 4);
  CHECK(von_neumann_entropy_bits(CovarianceMatrix(vac, {"A", "B"})) == 0.0);

  // g(3) = 2 log2 2 - 1 log2 1 = 2 bits.
  CHECK(von_neumann_entropy_bits(thermal(3.0, "A")) ==
        doctest::Approx(2.0).epsilon(1e-14));

  CHECK(std::abs(von_neumann_entropy_bits(network_defaults()) -
                 golden::kEntropyJointDefaults) <= 1e-12);
}

TEST_CASE("g kernel properties") {
  CHECK(g_bits(1.0) == 0.0);
  CHECK(g_bits(1.0 + 5e-13) == 0.0);  // limit window
  CHECK(g_bits(0.9999999999) == 0.0);

  std::mt19937_64 gen(73);
  std::uniform_real_distribution<double> ux(1.0, 50.0);
  std::uniform_real_distribution<double> udelta(1e-6, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(gen);
    const double d = udelta(gen);
    CHECK(g_bits(x + d) > g_bits(x));
  }

  for (double x : {20.0, 35.0, 50.0, 100.0, 1e3, 1e6}) {
    const double asym = std::log2(x * std::exp(1.0) / 2.0);
    CHECK(std::abs(g_bits(x) - asym) <= 0.01);
  }
}

TEST_CASE("homodyne conditioning") {
  // Uncorrelated measured mode leaves the rest untouched.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m.topLeftCorner(2, 2) = 2.5 * Eigen::Matrix2d::Identity();
  m.bottomRightCorner(2, 2) = 4.0 * Eigen::Matrix2d::Identity();
  const CovarianceMatrix prod(m, {"A", "B"});
  const CovarianceMatrix unchanged = homodyne_condition(prod, 1, Quadrature::x);
  REQUIRE(unchanged.n_modes() == 1);
  CHECK(unchanged.labels() == std::vector<std::string>{"A"});
  CHECK(unchanged.entries().isApprox(2.5 * Eigen::Matrix2d::Identity(), 0.0));

  // x homodyne on one EPR arm squeezes the partner x to 1/V.
  const CovarianceMatrix epr = two_mode_squeezed(5.0);
  const CovarianceMatrix cx = homodyne_condition(epr, 1, Quadrature::x);
  CHECK(cx(0, 0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(cx(1, 1) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(cx(0, 1) == doctest::Approx(0.0));

  const CovarianceMatrix cp = homodyne_condition(epr, 1, Quadrature::p);
  CHECK(cp(0, 0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(cp(1, 1) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("homodyne on a pure three-mode chain leaves a pure state") {
  std::mt19937_64 gen(74);
  std::uniform_real_distribution<double> ueta(0.01, 0.99);
  std::uniform_real_distribution<double> uv(1.1, 15.0);
  for (int i = 0; i < 50; ++i) {
    const CovarianceMatrix pure = testsupport::closed_form_network_covariance(
        uv(gen), ueta(gen), ChannelTotals{1.0, 0.0});
    const CovarianceMatrix cond =
        homodyne_condition(pure, pure.mode_index("C1"), Quadrature::x);
    const auto nus = symplectic_eigenvalues(cond);
    REQUIRE(nus.size() == 2);
    CHECK(std::abs(nus[0] - 1.0) <= 1e-9);
    CHECK(std::abs(nus[1] - 1.0) <= 1e-9);
  }
}

TEST_CASE("homodyne conditioning never increases diagonals") {
  const CovarianceMatrix net = network_defaults();
  for (int mode = 0; mode < 3; ++mode) {
    for (Quadrature q : {Quadrature::x, Quadrature::p}) {
      const CovarianceMatrix cond = homodyne_condition(net, mode, q);
      int src = 0;
      for (int k = 0; k < 3; ++k) {
        if (k == mode) continue;
        for (int j = 0; j < 2; ++j) {
          CHECK(cond(2 * src + j, 2 * src + j) <=
                net(2 * k + j, 2 * k + j) + 1e-12);
        }
        ++src;
      }
    }
  }
}

TEST_CASE("homodyne degenerate measurement errors") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m(2, 2) = 0.0;  // zero x variance on the measured mode
  const CovarianceMatrix g(m, {"A", "B"});
  CHECK_THROWS_AS(homodyne_condition(g, 1, Quadrature::x), NumericError);

  CHECK_THROWS_AS(homodyne_condition(thermal(2.0, "A"), 0, Quadrature::x),
                  ConfigError);
  CHECK_THROWS_AS(homodyne_condition(two_mode_squeezed(5.0), 2, Quadrature::x),
                  ConfigError);
}

TEST_CASE("reorder_modes") {
  const CovarianceMatrix net = network_defaults();

  const CovarianceMatrix same = reorder_modes(net, {0, 1, 2});
  CHECK(same.entries().isApprox(net.entries(), 0.0));
  CHECK(same.labels() == net.labels());

  const CovarianceMatrix swapped = reorder_modes(net, {0, 2, 1});
  CHECK(swapped.labels() == std::vector<std::string>{"A", "D2", "C1"});
  const CovarianceMatrix back = reorder_modes(swapped, {0, 2, 1});
  CHECK(back.entries().isApprox(net.entries(), 0.0));
  CHECK(back.labels() == net.labels());

  CHECK_THROWS_AS(reorder_modes(net, {0, 0, 1}), ConfigError);
  CHECK_THROWS_AS(reorder_modes(net, {0, 1}), ConfigError);
  CHECK_THROWS_AS(reorder_modes(net, {0, 1, 3}), ConfigError);
}

TEST_CASE("entropy and spectrum invariant under reorder") {
  const CovarianceMatrix net = network_defaults();
  const double s0 = von_neumann_entropy_bits(net);
  const auto nus0 = symplectic_eigenvalues(net);

  std::vector<int> perm{0, 1, 2};
  std::mt19937_64 gen(75);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(perm.begin(), perm.end(), gen);
    const CovarianceMatrix moved = reorder_modes(net, perm);
    CHECK(std::abs(von_neumann_entropy_bits(moved) - s0) <= 1e-12);
    const auto nus = symplectic_eigenvalues(moved);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(nus[k] - nus0[k]) <= 1e-12);
  }
}

}  // TEST_SUITE
