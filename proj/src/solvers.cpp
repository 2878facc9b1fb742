#include "svtprox/solvers.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace svtprox {

void check_problem(const CompletionProblem& problem) {
  if (problem.n1 < 1 || problem.n2 < 1) {
    throw std::invalid_argument("completion problem: dimensions must be >= 1");
  }
  if (!(problem.lambda > 0.0)) {
    throw std::invalid_argument("completion problem: lambda must be positive");
  }
  std::set<std::pair<int, int>> seen;
  for (const Observation& obs : problem.observed) {
    if (obs.row < 0 || obs.row >= problem.n1 || obs.col < 0 ||
        obs.col >= problem.n2) {
      throw std::invalid_argument("completion problem: observation out of bounds");
    }
    if (!std::isfinite(obs.value)) {
      throw std::invalid_argument("completion problem: observation not finite");
    }
    if (!seen.emplace(obs.row, obs.col).second) {
      throw std::invalid_argument("completion problem: duplicate observed position");
    }
  }
}

double objective(const CompletionProblem& problem, const DenseMatrix& X) {
  double data_fit = 0.0;
  for (const Observation& obs : problem.observed) {
    const double residual = X(obs.row, obs.col) - obs.value;
    data_fit += residual * residual;
  }
  return 0.5 * data_fit + problem.lambda * problem.fn.f(nuclear_norm(X));
}

namespace {

// gradient of the masked data fit: (X - M) on the observed set, 0 elsewhere
DenseMatrix masked_gradient(const CompletionProblem& problem,
                            const DenseMatrix& X) {
  DenseMatrix grad = DenseMatrix::Zero(problem.n1, problem.n2);
  for (const Observation& obs : problem.observed) {
    grad(obs.row, obs.col) = X(obs.row, obs.col) - obs.value;
  }
  return grad;
}

}  // namespace

SolveReport solve_pgd(const CompletionProblem& problem, int max_iters,
                      double tol) {
  check_problem(problem);
  if (max_iters < 1) {
    throw std::invalid_argument("solve_pgd: max_iters must be >= 1");
  }

  SolveReport report;
  report.X = DenseMatrix::Zero(problem.n1, problem.n2);
  double previous = objective(problem, report.X);
  report.objective_trace.push_back(previous);

  for (int k = 0; k < max_iters; ++k) {
    const ProxResult prox = generalized_svt(
        report.X - masked_gradient(problem, report.X), problem.fn,
        problem.lambda);
    report.X = prox.X_hat;
    report.retained_rank = prox.retained_rank;
    const double current = objective(problem, report.X);
    report.objective_trace.push_back(current);
    report.iterations = k + 1;
    report.final_relative_change =
        std::abs(current - previous) / std::max(1.0, std::abs(previous));
    if (report.final_relative_change <= tol) {
      report.converged = true;
      break;
    }
    previous = current;
  }
  return report;
}

SolveReport solve_accelerated(const CompletionProblem& problem, int max_iters,
                              double tol) {
  check_problem(problem);
  if (max_iters < 1) {
    throw std::invalid_argument("solve_accelerated: max_iters must be >= 1");
  }

  SolveReport report;
  report.X = DenseMatrix::Zero(problem.n1, problem.n2);
  DenseMatrix extrapolated = report.X;
  DenseMatrix previous_X = report.X;
  double theta = 1.0;
  double previous = objective(problem, report.X);
  report.objective_trace.push_back(previous);

  for (int k = 0; k < max_iters; ++k) {
    const ProxResult prox = generalized_svt(
        extrapolated - masked_gradient(problem, extrapolated), problem.fn,
        problem.lambda);
    const double current = objective(problem, prox.X_hat);
    report.retained_rank = prox.retained_rank;
    report.objective_trace.push_back(current);
    report.iterations = k + 1;
    report.final_relative_change =
        std::abs(current - previous) / std::max(1.0, std::abs(previous));

    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    extrapolated =
        prox.X_hat + ((theta - 1.0) / theta_next) * (prox.X_hat - previous_X);
    previous_X = report.X = prox.X_hat;
    theta = theta_next;

    if (report.final_relative_change <= tol) {
      report.converged = true;
      break;
    }
    previous = current;
  }
  return report;
}

}  // namespace svtprox
