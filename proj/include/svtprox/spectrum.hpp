#pragma once

#include <stdexcept>
#include <vector>

#include "svtprox/functions.hpp"

namespace svtprox {

// Thrown when an iterative solve fails to meet its tolerance, which under
// the admissibility hypotheses cannot happen; it signals an inadmissible
// function or numeric overflow.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Descending positive singular values sigma^1 >= ... >= sigma^r > 0.
// rank() == 0 encodes the zero matrix.  Index r+1 compares as -infinity.
struct SingularSpectrum {
  std::vector<double> values;

  int rank() const { return static_cast<int>(values.size()); }
  double top() const { return values.front(); }
};

// Checked construction: throws std::invalid_argument unless values are
// nonincreasing, strictly positive and finite.
SingularSpectrum make_spectrum(std::vector<double> values);

// Prefix sums S_j = sigma^1 + ... + sigma^j, j = 1..r.
std::vector<double> partial_sums(const SingularSpectrum& spectrum);

// Elementwise (sigma^i - t)_+, preserving order and length.
std::vector<double> shrink(const SingularSpectrum& spectrum, double t);

struct ScalarRoot {
  double t = 0.0;
  int iterations = 0;
};

// Solves tau * g(S_j - j*t) = t for the unique t > 0, by bisection.
//
// phi(t) = tau*g(S_j - j*t) - t is strictly decreasing wherever g is
// nondecreasing, with phi(0) = tau*g(S_j) >= 0, so a sign-change bracket
// always exists for admissible g.  The root of interest has S_j - j*t >= 0
// whenever it exists there, and that subinterval is bisected first so the
// solver never depends on g's behaviour at negative arguments unless the
// root genuinely lies beyond S_j / j.
//
// Accepts when |phi(t)| <= tol * max(1, t); throws ConvergenceError if the
// bracket cannot be established or the tolerance is not met (a hypothesis
// violation in fn), and SpecError if phi(0) < 0.
ScalarRoot solve_scalar_equation(const SpectralFunction& fn, double S_j,
                                 int j, double tau, double tol = 1e-10);

// Threshold level and retained count for the generalized shrinkage.
// j_star == 0 encodes the degenerate tau >= sigma^1 branch, in which case
// t_star == sigma^1 and the prox output is the zero matrix.
struct ThresholdResult {
  int j_star = 0;
  double t_star = 0.0;
  double equation_residual = 0.0;  // |tau*g(S_j* - j*t*) - t*|, 0 when j_star == 0
  int bisection_iterations = 0;    // summed over all scalar solves
  int equation_solves = 0;         // number of scalar equations solved
};

// Binary search for the unique (j*, t*) with sigma^{j*+1} <= t* < sigma^{j*},
// using the monotone certificates: t_M >= sigma^M rules out j* >= M, and
// t_M < sigma^{M+1} rules out j* <= M.  Performs at most
// ceil(log2(r)) + 1 scalar solves.  Requires spectrum.rank() >= 1; callers
// handle the zero matrix themselves.
ThresholdResult find_threshold(const SpectralFunction& fn,
                               const SingularSpectrum& spectrum, double tau);

// Reference implementation: sequential scan j = 1, 2, ..., r.  Same
// contract and same outputs as find_threshold.
ThresholdResult linear_scan_threshold(const SpectralFunction& fn,
                                      const SingularSpectrum& spectrum,
                                      double tau);

}  // namespace svtprox
