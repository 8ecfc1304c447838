#include "cvqkd/covariance.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <utility>

namespace cvqkd {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kClampWindow = 1e-9;
constexpr double kPhysicalTol = 1e-6;

std::string format_cell(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  return fmt::format("{:.12g}", value);
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries,
                                   std::vector<std::string> labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
  const auto dim = entries_.rows();
  if (dim == 0 || dim != entries_.cols() || dim % 2 != 0) {
    throw ConfigError(fmt::format(
        "covariance matrix must be square with even dimension, got {}x{}",
        entries_.rows(), entries_.cols()));
  }
  if (static_cast<Eigen::Index>(labels_.size()) * 2 != dim) {
    throw ConfigError(fmt::format(
        "expected {} mode labels for a {}x{} matrix, got {}", dim / 2, dim,
        dim, labels_.size()));
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      const double tol =
          kSymmetryTol * std::max(1.0, std::abs(entries_(i, j)));
      if (std::abs(entries_(i, j) - entries_(j, i)) > tol) {
        throw ConfigError(fmt::format(
            "covariance matrix not symmetric at ({}, {}): {} vs {}", i, j,
            entries_(i, j), entries_(j, i)));
      }
    }
  }
}

int CovarianceMatrix::mode_index(const std::string& label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) return static_cast<int>(k);
  }
  throw ConfigError(fmt::format("no mode labeled '{}' in covariance matrix",
                                label));
}

std::string CovarianceMatrix::debug_string() const {
  std::string out = "modes:";
  for (const auto& l : labels_) {
    out += ' ';
    out += l;
  }
  out += '\n';
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_cell(entries_(i, j));
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double g_bits(double nu) {
  if (nu <= 1.0 + 1e-12) return 0.0;
  const double a = (nu + 1.0) / 2.0;
  const double b = (nu - 1.0) / 2.0;
  return a * std::log2(a) - b * std::log2(b);
}

CovarianceMatrix two_mode_squeezed(double v) {
  if (v < 1.0) {
    throw ConfigError(
        fmt::format("EPR variance must satisfy V >= 1, got {}", v));
  }
  const double c = std::sqrt(v * v - 1.0);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
  g(0, 0) = g(1, 1) = g(2, 2) = g(3, 3) = v;
  g(0, 2) = g(2, 0) = c;
  g(1, 3) = g(3, 1) = -c;
  return CovarianceMatrix(std::move(g), {"A", "B"});
}

CovarianceMatrix beamsplitter_transform(const CovarianceMatrix& gamma,
                                        int mode_index, double eta,
                                        const std::string& ancilla_label) {
  if (eta < 0.0 || eta > 1.0) {
    throw ConfigError(
        fmt::format("beamsplitter transmissivity must lie in [0, 1], got {}",
                    eta));
  }
  const int n = gamma.n_modes();
  if (mode_index < 0 || mode_index >= n) {
    throw ConfigError(fmt::format(
        "beamsplitter mode index {} out of range for {} modes", mode_index,
        n));
  }
  const int dim = 2 * n + 2;
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(dim, dim);
  big.topLeftCorner(2 * n, 2 * n) = gamma.entries();

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  const int m = 2 * mode_index;
  const int a = 2 * n;
  for (int q = 0; q < 2; ++q) {
    s(m + q, m + q) = t;
    s(m + q, a + q) = r;
    s(a + q, m + q) = -r;
    s(a + q, a + q) = t;
  }
  Eigen::MatrixXd out = s * big * s.transpose();
  out = ((out + out.transpose()) / 2.0).eval();  // kill roundoff asymmetry

  std::vector<std::string> labels = gamma.labels();
  labels.push_back(ancilla_label);
  return CovarianceMatrix(std::move(out), std::move(labels));
}

std::vector<double> symplectic_eigenvalues_raw(const CovarianceMatrix& gamma) {
  // The spectrum of Omega gamma is {+-i nu_k}, and gamma^(1/2) Omega
  // gamma^(1/2) is antisymmetric with singular values {nu_k, nu_k}. Both
  // factorizations below converge unconditionally, unlike a nonsymmetric
  // Schur iteration on Omega gamma, which can stall on the degenerate
  // spectra that arise at zero excess noise.
  const int n = gamma.n_modes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.entries());
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of covariance matrix failed");
  }
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd root = es.eigenvectors() *
                               lam.cwiseSqrt().asDiagonal() *
                               es.eigenvectors().transpose();
  const Eigen::MatrixXd k = root * symplectic_form(n) * root;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k);
  const Eigen::VectorXd& sigma = svd.singularValues();  // sorted descending
  std::vector<double> nus(n);
  for (int i = 0; i < n; ++i) nus[i] = (sigma[2 * i] + sigma[2 * i + 1]) / 2.0;
  return nus;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  std::vector<double> nus = symplectic_eigenvalues_raw(gamma);
  for (double& nu : nus) {
    if (nu < 1.0 - kPhysicalTol) {
      throw UnphysicalStateError(
          fmt::format("unphysical covariance matrix: symplectic eigenvalue "
                      "{} < 1 - 1e-6",
                      nu),
          nu);
    }
    if (nu >= 1.0 - kClampWindow && nu < 1.0) nu = 1.0;
  }
  return nus;
}

double von_neumann_entropy_bits(const CovarianceMatrix& gamma) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(gamma)) s += g_bits(nu);
  return s;
}

CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma,
                                    int measured_mode, Quadrature quad) {
  const int n = gamma.n_modes();
  if (n < 2) {
    throw ConfigError("homodyne conditioning requires at least two modes");
  }
  if (measured_mode < 0 || measured_mode >= n) {
    throw ConfigError(fmt::format(
        "measured mode index {} out of range for {} modes", measured_mode,
        n));
  }
  const int q = quad == Quadrature::x ? 0 : 1;
  const int mq = 2 * measured_mode + q;
  const double variance = gamma(mq, mq);
  if (variance <= 0.0) {
    throw NumericError(fmt::format(
        "degenerate homodyne measurement: quadrature variance {} <= 0",
        variance));
  }

  std::vector<int> keep;
  keep.reserve(2 * n - 2);
  for (int i = 0; i < 2 * n; ++i) {
    if (i / 2 != measured_mode) keep.push_back(i);
  }
  const int dim = static_cast<int>(keep.size());
  Eigen::MatrixXd rest(dim, dim);
  Eigen::VectorXd cross(dim);
  for (int i = 0; i < dim; ++i) {
    cross(i) = gamma(keep[i], mq);
    for (int j = 0; j < dim; ++j) rest(i, j) = gamma(keep[i], keep[j]);
  }
  // (Pi gamma_m Pi)^MP has the single entry 1/variance on the measured
  // quadrature, so the update is the rank-one Schur complement below.
  Eigen::MatrixXd out = rest - (cross * cross.transpose()) / variance;
  out = ((out + out.transpose()) / 2.0).eval();

  std::vector<std::string> labels;
  labels.reserve(n - 1);
  for (int k = 0; k < n; ++k) {
    if (k != measured_mode) labels.push_back(gamma.labels()[k]);
  }
  return CovarianceMatrix(std::move(out), std::move(labels));
}

CovarianceMatrix reorder_modes(const CovarianceMatrix& gamma,
                               const std::vector<int>& permutation) {
  const int n = gamma.n_modes();
  if (static_cast<int>(permutation.size()) != n) {
    throw ConfigError(fmt::format(
        "permutation has {} entries for {} modes", permutation.size(), n));
  }
  std::vector<bool> seen(n, false);
  for (int p : permutation) {
    if (p < 0 || p >= n || seen[p]) {
      throw ConfigError("permutation is not a bijection on mode indices");
    }
    seen[p] = true;
  }
  Eigen::MatrixXd out(2 * n, 2 * n);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = gamma.labels()[permutation[i]];
    for (int j = 0; j < n; ++j) {
      for (int qi = 0; qi < 2; ++qi) {
        for (int qj = 0; qj < 2; ++qj) {
          out(2 * i + qi, 2 * j + qj) =
              gamma(2 * permutation[i] + qi, 2 * permutation[j] + qj);
        }
      }
    }
  }
  return CovarianceMatrix(std::move(out), std::move(labels));
}

}  // namespace cvqkd
