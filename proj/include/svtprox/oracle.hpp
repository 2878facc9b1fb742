#pragma once

#include <string>
#include <variant>
#include <vector>

#include "svtprox/linalg.hpp"

namespace svtprox {

// Output of the brute-force minimizers.  These share no SVD-thresholding
// logic with generalized_svt and exist to certify it independently.
struct OracleSolution {
  std::variant<std::vector<double>, DenseMatrix> minimizer;
  double objective = 0.0;
  std::string method;
  bool converged = false;
  double stationarity = 0.0;  // final first-order residual
  int iterations = 0;
};

// Minimizes the spectral reduction
//   psi(s) = tau * f(sum_i s_i) + 0.5 * sum_i (s_i - sigma_i)^2,  s >= 0,
// by projected gradient descent with fixed step 1 / (1 + r*tau*L_g), where
// L_g is a sampled bound on g's slope over [0, sum sigma].  psi is strictly
// convex so the minimizer is unique.  Runs until the KKT residual drops
// below 1e-9 or iters is exhausted (reported via converged, not thrown).
OracleSolution spectral_prox_oracle(const SingularSpectrum& sigma,
                                    const SpectralFunction& fn, double tau,
                                    int iters);

// Minimizes tau*f(||X||_*) + 0.5*||X - Y||_F^2 directly over matrix
// entries by subgradient descent with diminishing steps c/sqrt(k) and
// best-iterate tracking.  The nuclear-norm subgradient uses the selection
// g(||X||_*) * U V^T from the thin SVD of the iterate.  Desk scale only:
// requires n1, n2 <= 4.
OracleSolution matrix_prox_oracle(const DenseMatrix& Y,
                                  const SpectralFunction& fn, double tau,
                                  int iters);

}  // namespace svtprox
