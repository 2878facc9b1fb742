#include "svtprox/spectrum.hpp"

#include <cmath>
#include <limits>

namespace svtprox {

namespace {

constexpr int kMaxBisectionIterations = 200;
constexpr double kBracketWidthTol = 1e-13;

double sigma_at(const SingularSpectrum& spectrum, int index_1based) {
  // index r+1 compares as -infinity
  if (index_1based > spectrum.rank()) {
    return -std::numeric_limits<double>::infinity();
  }
  return spectrum.values[index_1based - 1];
}

}  // namespace

SingularSpectrum make_spectrum(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) {
      throw std::invalid_argument(
          "spectrum values must be finite and strictly positive");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw std::invalid_argument("spectrum values must be nonincreasing");
    }
  }
  return SingularSpectrum{std::move(values)};
}

std::vector<double> partial_sums(const SingularSpectrum& spectrum) {
  std::vector<double> sums(spectrum.values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    acc += spectrum.values[i];
    sums[i] = acc;
  }
  return sums;
}

std::vector<double> shrink(const SingularSpectrum& spectrum, double t) {
  std::vector<double> out(spectrum.values.size());
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    out[i] = std::max(0.0, spectrum.values[i] - t);
  }
  return out;
}

ScalarRoot solve_scalar_equation(const SpectralFunction& fn, double S_j, int j,
                                 double tau, double tol) {
  if (!(S_j > 0.0) || j < 1 || !(tau > 0.0) || !(tol > 0.0)) {
    throw std::invalid_argument("solve_scalar_equation: bad arguments");
  }
  const auto phi = [&](double t) { return tau * fn.g(S_j - j * t) - t; };

  const double phi0 = phi(0.0);
  if (phi0 < 0.0) {
    throw SpecError("g(S_j) < 0: function violates admissibility");
  }
  if (std::isnan(phi0)) {
    throw ConvergenceError("g is not a number at S_j");
  }
  if (phi0 == 0.0) return {0.0, 0};

  // Bracket the root, preferring the subinterval where the equation
  // argument S_j - j*t stays nonnegative; there phi is strictly
  // decreasing for admissible g and the root is unique.  An overflowing
  // phi(0) (+inf) still has a usable sign, so only the wide bracket
  // below needs tau*g(S_j) to be finite.
  const double split = S_j / j;  // argument hits 0 here
  double lo = 0.0;
  double hi;
  if (phi(split) <= 0.0) {
    hi = split;
    if (phi0 < split && phi(phi0) <= 0.0) {
      hi = phi0;  // phi0 == tau*g(S_j) bounds the root when g is monotone
    }
  } else {
    lo = split;
    hi = phi0;
    if (!std::isfinite(hi) || phi(hi) > 0.0) {
      throw ConvergenceError(
          "no sign change on [S_j/j, tau*g(S_j)]: g is not nondecreasing");
    }
  }

  int iterations = 0;
  while (iterations < kMaxBisectionIterations && hi - lo > kBracketWidthTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted in floating point
    const double value = phi(mid);
    ++iterations;
    if (value == 0.0) return {mid, iterations};
    if (value > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);

  // secant polish inside the bracket when bisection alone leaves a
  // residual above the acceptance level
  double residual = std::abs(phi(t));
  for (int k = 0; k < 4 && residual > 0.1 * tol * std::max(1.0, t); ++k) {
    const double flo = phi(lo);
    const double fhi = phi(hi);
    if (flo == fhi) break;
    const double candidate = lo - flo * (hi - lo) / (fhi - flo);
    if (!(candidate > lo) || !(candidate < hi)) break;
    const double fc = phi(candidate);
    ++iterations;
    if (std::abs(fc) < residual) {
      t = candidate;
      residual = std::abs(fc);
    }
    if (fc > 0.0) {
      lo = candidate;
    } else {
      hi = candidate;
    }
  }

  if (residual > tol * std::max(1.0, t)) {
    throw ConvergenceError(
        "scalar equation residual " + std::to_string(residual) +
        " above tolerance; function likely violates admissibility");
  }
  return {t, iterations};
}

namespace {

ThresholdResult degenerate_result(const SingularSpectrum& spectrum) {
  ThresholdResult result;
  result.j_star = 0;
  result.t_star = spectrum.top();
  return result;
}

}  // namespace

ThresholdResult find_threshold(const SpectralFunction& fn,
                               const SingularSpectrum& spectrum, double tau) {
  if (spectrum.rank() < 1) {
    throw std::invalid_argument("find_threshold: empty spectrum");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("find_threshold: tau must be positive");
  }
  if (tau >= spectrum.top()) return degenerate_result(spectrum);

  const std::vector<double> sums = partial_sums(spectrum);
  ThresholdResult result;

  // Invariant: j* in [L, R].  Each probe either returns or strictly
  // shrinks the interval, so at most ceil(log2(r)) + 1 equations are
  // solved.  (The interval updates are half-open on both branches; the
  // printed algorithm's L = M / R = M updates can stall when L == R.)
  int L = 1;
  int R = spectrum.rank();
  while (L <= R) {
    const int M = L + (R - L) / 2;
    const ScalarRoot root = solve_scalar_equation(fn, sums[M - 1], M, tau);
    result.bisection_iterations += root.iterations;
    result.equation_solves += 1;
    if (root.t >= sigma_at(spectrum, M)) {
      R = M - 1;  // t_M >= sigma^M only happens past j*
    } else if (root.t < sigma_at(spectrum, M + 1)) {
      L = M + 1;  // constraint interval is still ahead
    } else {
      result.j_star = M;
      result.t_star = root.t;
      result.equation_residual =
          std::abs(tau * fn.g(sums[M - 1] - M * root.t) - root.t);
      return result;
    }
  }
  throw ConvergenceError(
      "threshold search exhausted its interval; function violates the "
      "admissibility hypotheses");
}

ThresholdResult linear_scan_threshold(const SpectralFunction& fn,
                                      const SingularSpectrum& spectrum,
                                      double tau) {
  if (spectrum.rank() < 1) {
    throw std::invalid_argument("linear_scan_threshold: empty spectrum");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("linear_scan_threshold: tau must be positive");
  }
  if (tau >= spectrum.top()) return degenerate_result(spectrum);

  const std::vector<double> sums = partial_sums(spectrum);
  ThresholdResult result;
  for (int j = 1; j <= spectrum.rank(); ++j) {
    const ScalarRoot root = solve_scalar_equation(fn, sums[j - 1], j, tau);
    result.bisection_iterations += root.iterations;
    result.equation_solves += 1;
    if (sigma_at(spectrum, j + 1) <= root.t && root.t < sigma_at(spectrum, j)) {
      result.j_star = j;
      result.t_star = root.t;
      result.equation_residual =
          std::abs(tau * fn.g(sums[j - 1] - j * root.t) - root.t);
      return result;
    }
  }
  throw ConvergenceError(
      "sequential threshold scan found no admissible index; function "
      "violates the admissibility hypotheses");
}

}  // namespace svtprox
