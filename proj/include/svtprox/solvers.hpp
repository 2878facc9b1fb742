#pragma once

#include <vector>

#include "svtprox/linalg.hpp"

namespace svtprox {

struct Observation {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// min over X of  0.5 * sum_{(i,j) in observed} (X_ij - M_ij)^2
//              + lambda * f(||X||_*)
struct CompletionProblem {
  int n1 = 0;
  int n2 = 0;
  std::vector<Observation> observed;  // 0-indexed, distinct positions
  double lambda = 0.0;
  SpectralFunction fn;
};

// Throws std::invalid_argument on out-of-bounds or duplicate positions,
// nonpositive dimensions or lambda <= 0.
void check_problem(const CompletionProblem& problem);

double objective(const CompletionProblem& problem, const DenseMatrix& X);

struct SolveReport {
  DenseMatrix X;
  std::vector<double> objective_trace;  // F(X_k), k = 0, 1, ...
  int iterations = 0;
  bool converged = false;
  double final_relative_change = 0.0;
  int retained_rank = 0;  // of the last prox output
};

// Proximal gradient with step 1 (the masked data fit has gradient Lipschitz
// constant exactly 1), X_0 = 0:
//   X_{k+1} = prox_{lambda f(||.||_*)}( X_k - grad(X_k) ).
// Stops when |F_{k+1} - F_k| <= tol * max(1, |F_k|).  The objective trace
// is nonincreasing.
SolveReport solve_pgd(const CompletionProblem& problem, int max_iters,
                      double tol);

// Accelerated variant with the standard extrapolation schedule
// theta_{k+1} = (1 + sqrt(1 + 4 theta_k^2)) / 2.  The first iteration
// coincides with solve_pgd; the trace is not guaranteed monotone.  No
// momentum restart.  Stopping rule identical to solve_pgd.
SolveReport solve_accelerated(const CompletionProblem& problem, int max_iters,
                              double tol);

}  // namespace svtprox
