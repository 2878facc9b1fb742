#include "svtprox/linalg.hpp"

#include <cmath>
#include <limits>

namespace svtprox {

double default_rank_tol(const DenseMatrix& Y) {
  return static_cast<double>(std::max(Y.rows(), Y.cols())) *
         std::numeric_limits<double>::epsilon();
}

ThinSVD thin_svd(const DenseMatrix& Y, double rank_tol) {
  if (Y.rows() < 1 || Y.cols() < 1) {
    throw std::invalid_argument("thin_svd: matrix must be nonempty");
  }
  if (!Y.allFinite()) {
    throw std::invalid_argument("thin_svd: matrix entries must be finite");
  }
  if (rank_tol < 0.0) rank_tol = default_rank_tol(Y);

  Eigen::BDCSVD<DenseMatrix> svd(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw std::runtime_error("thin_svd: SVD backend failed");
  }
  const Eigen::VectorXd& all_values = svd.singularValues();
  const double cutoff =
      all_values.size() > 0 ? rank_tol * all_values(0) : 0.0;

  int rank = 0;
  while (rank < all_values.size() && all_values(rank) > cutoff) ++rank;

  ThinSVD out;
  out.U = svd.matrixU().leftCols(rank);
  out.V = svd.matrixV().leftCols(rank);
  out.sigma.values.assign(all_values.data(), all_values.data() + rank);
  return out;
}

double nuclear_norm(const DenseMatrix& X) {
  Eigen::BDCSVD<DenseMatrix> svd(X);
  return svd.singularValues().sum();
}

DenseMatrix soft_threshold_matrix(const DenseMatrix& Y, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("soft_threshold_matrix: tau must be >= 0");
  }
  const ThinSVD svd = thin_svd(Y);
  const std::vector<double> shrunk = shrink(svd.sigma, tau);

  int kept = 0;
  while (kept < svd.sigma.rank() && shrunk[kept] > 0.0) ++kept;
  if (kept == 0) return DenseMatrix::Zero(Y.rows(), Y.cols());

  const Eigen::VectorXd diag =
      Eigen::Map<const Eigen::VectorXd>(shrunk.data(), kept);
  return svd.U.leftCols(kept) * diag.asDiagonal() *
         svd.V.leftCols(kept).transpose();
}

ProxResult generalized_svt(const DenseMatrix& Y, const SpectralFunction& fn,
                           double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("generalized_svt: tau must be positive");
  }
  const ThinSVD svd = thin_svd(Y);

  ProxResult result;
  if (svd.sigma.rank() == 0) {
    // zero matrix: the prox is the zero matrix at threshold level 0
    result.X_hat = DenseMatrix::Zero(Y.rows(), Y.cols());
    result.objective = tau * fn.f(0.0);
    return result;
  }

  result.threshold = find_threshold(fn, svd.sigma, tau);
  const int j_star = result.threshold.j_star;
  result.retained_rank = j_star;

  if (j_star == 0) {
    result.X_hat = DenseMatrix::Zero(Y.rows(), Y.cols());
  } else {
    Eigen::VectorXd diag(j_star);
    for (int i = 0; i < j_star; ++i) {
      diag(i) = svd.sigma.values[i] - result.threshold.t_star;
      result.nuclear_norm += diag(i);
    }
    result.X_hat = svd.U.leftCols(j_star) * diag.asDiagonal() *
                   svd.V.leftCols(j_star).transpose();
  }
  result.objective = tau * fn.f(result.nuclear_norm) +
                     0.5 * (result.X_hat - Y).squaredNorm();
  return result;
}

namespace {

double spectral_norm(const DenseMatrix& W) {
  if (W.size() == 0) return 0.0;
  Eigen::BDCSVD<DenseMatrix> svd(W);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double abs_max(const DenseMatrix& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

}  // namespace

CertificateReport certify_optimality(const DenseMatrix& Y,
                                     const ProxResult& result,
                                     const SpectralFunction& fn, double tau,
                                     double tol) {
  CertificateReport report;
  const double scale = tau * fn.g(result.nuclear_norm);

  if (scale == 0.0) {
    // stationarity then forces Y == X_hat exactly
    const double gap = (Y - result.X_hat).norm();
    report.passed = gap <= tol;
    report.detail = report.passed
                        ? "pass (g at the solution is 0 and X_hat == Y)"
                        : "fail: g at the solution is 0 but ||Y - X_hat||_F = " +
                              std::to_string(gap);
    return report;
  }

  DenseMatrix W;
  if (result.retained_rank == 0) {
    W = Y / tau;  // the subgradient choice for the zero minimizer
  } else {
    const ThinSVD factors = thin_svd(result.X_hat);
    W = (Y - result.X_hat) / scale -
        factors.U * factors.V.transpose();
    report.u_w_max = abs_max(factors.U.transpose() * W);
    report.w_v_max = abs_max(W * factors.V);
  }
  report.w_spectral_norm = spectral_norm(W);

  report.passed = report.u_w_max <= tol && report.w_v_max <= tol &&
                  report.w_spectral_norm <= 1.0 + tol;
  if (!report.passed) {
    report.detail = "fail: ||Ua^T W||_max=" + std::to_string(report.u_w_max) +
                    " ||W Va||_max=" + std::to_string(report.w_v_max) +
                    " ||W||_2=" + std::to_string(report.w_spectral_norm);
  } else {
    report.detail = "pass";
  }
  return report;
}

}  // namespace svtprox
