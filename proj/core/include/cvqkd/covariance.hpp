#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cvqkd/errors.hpp"

namespace cvqkd {

enum class Quadrature { x, p };

// Real symmetric 2Nx2N matrix in shot-noise units (vacuum variance = 1),
// xpxp ordering: mode k owns rows/cols 2k (x) and 2k+1 (p).
class CovarianceMatrix {
 public:
  // Validates squareness, even dimension, label count and symmetry
  // (|e_ij - e_ji| <= 1e-12 * max(1, |e_ij|)). Physicality is checked by
  // the operations that require it, not here: conditioning legitimately
  // produces sub-vacuum diagonals.
  CovarianceMatrix(Eigen::MatrixXd entries, std::vector<std::string> labels);

  int n_modes() const noexcept { return static_cast<int>(labels_.size()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  // Index of the mode carrying `label`; throws ConfigError if absent.
  int mode_index(const std::string& label) const;

  // Canonical plain-text rendering used by golden-file tests: a label line
  // followed by space-separated rows at 12 significant digits.
  std::string debug_string() const;

 private:
  Eigen::MatrixXd entries_;
  std::vector<std::string> labels_;
};

// Block-diagonal symplectic form with per-mode blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// Von Neumann entropy kernel in bits; exactly 0 for nu <= 1 + 1e-12.
double g_bits(double nu);

// EPR state: diagonal blocks V*I, off-diagonal sqrt(V^2-1)*sigma_z.
CovarianceMatrix two_mode_squeezed(double v);

// Appends a vacuum ancilla as the last mode and mixes it with `mode_index`
// through Y_eta = [[sqrt(eta) I, sqrt(1-eta) I], [-sqrt(1-eta) I, sqrt(eta) I]].
CovarianceMatrix beamsplitter_transform(const CovarianceMatrix& gamma,
                                        int mode_index, double eta,
                                        const std::string& ancilla_label);

// Moduli of the eigenvalues of i*Omega*gamma, pair-averaged, descending.
// No clamping, no physicality check: the raw spectrum for diagnostics.
std::vector<double> symplectic_eigenvalues_raw(const CovarianceMatrix& gamma);

// As above but values in [1 - 1e-9, 1) clamp to 1; any value below
// 1 - 1e-6 throws UnphysicalStateError carrying it.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma);

// S = sum_k g(nu_k) in bits.
double von_neumann_entropy_bits(const CovarianceMatrix& gamma);

// Gaussian conditioning on an ideal homodyne measurement of one quadrature
// of `measured_mode`: gamma_rest - sigma (Pi gamma_m Pi)^MP sigma^T with
// Pi = diag(1,0) for x, diag(0,1) for p, and MP the Moore-Penrose inverse.
CovarianceMatrix homodyne_condition(const CovarianceMatrix& gamma,
                                    int measured_mode, Quadrature quad);

// permutation[i] = input index of the mode placed at output position i.
CovarianceMatrix reorder_modes(const CovarianceMatrix& gamma,
                               const std::vector<int>& permutation);

}  // namespace cvqkd
