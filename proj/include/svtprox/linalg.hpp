#pragma once

#include <Eigen/Dense>
#include <string>

#include "svtprox/spectrum.hpp"

namespace svtprox {

using DenseMatrix = Eigen::MatrixXd;

// Rank cutoff used by thin_svd when none is given: max(n1, n2) * eps.
double default_rank_tol(const DenseMatrix& Y);

// Y = U * diag(sigma) * V^T restricted to the numeric rank r: singular
// values > rank_tol * sigma^1 are kept.  U is n1 x r, V is n2 x r, both
// with orthonormal columns.  The zero matrix yields r == 0 and empty
// factors.
struct ThinSVD {
  Eigen::MatrixXd U;
  SingularSpectrum sigma;
  Eigen::MatrixXd V;
};

// rank_tol < 0 selects default_rank_tol(Y).
ThinSVD thin_svd(const DenseMatrix& Y, double rank_tol = -1.0);

// Sum of all singular values.
double nuclear_norm(const DenseMatrix& X);

// Soft shrinkage U * diag((sigma^i - tau)_+) * V^T, the prox of
// tau * ||.||_* .
DenseMatrix soft_threshold_matrix(const DenseMatrix& Y, double tau);

struct ProxResult {
  DenseMatrix X_hat;
  ThresholdResult threshold;
  int retained_rank = 0;    // == threshold.j_star
  double nuclear_norm = 0.0;
  double objective = 0.0;   // tau*f(||X_hat||_*) + 0.5*||X_hat - Y||_F^2
};

// The generalized shrinkage prox: minimizes
//   tau * f(||X||_*) + 0.5 * ||X - Y||_F^2
// by shrinking Y's singular values at the solved threshold level.
ProxResult generalized_svt(const DenseMatrix& Y, const SpectralFunction& fn,
                           double tau);

struct CertificateReport {
  bool passed = false;
  double u_w_max = 0.0;          // ||U_a^T W||_max
  double w_v_max = 0.0;          // ||W V_a||_max
  double w_spectral_norm = 0.0;  // ||W||_2
  std::string detail;
};

// Recomputes the subgradient certificate for result = generalized_svt(Y):
//   W = (Y - X_hat - tau*g(||X_hat||_*) * Ua Va^T) / (tau * g(||X_hat||_*))
// with Ua, Va the retained factors of X_hat, and passes iff
// ||Ua^T W||_max <= tol, ||W Va||_max <= tol and ||W||_2 <= 1 + tol.
// For X_hat == 0 the choice W = Y / tau is used; if g(||X_hat||_*) == 0
// the condition degenerates to ||Y - X_hat||_F <= tol.
CertificateReport certify_optimality(const DenseMatrix& Y,
                                     const ProxResult& result,
                                     const SpectralFunction& fn, double tau,
                                     double tol);

}  // namespace svtprox
