// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "svtprox/linalg.hpp"
#include "svtprox/oracle.hpp"
#include "svtprox/rng.hpp"
#include "svtprox/solvers.hpp"

using namespace svtprox;
using svtprox_tests::make_low_rank_fixture;

namespace {

constexpr std::uint64_t kMasterSeed = 42;
const std::vector<std::string> kBuiltins = {"linear", "quadratic", "exp",
                                            "poly:0.5,0.25"};

struct Outcome {
  bool passed = true;
  std::string detail;
  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string eng(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2e", x);
  return buffer;
}

DenseMatrix random_gaussian(Rng& rng, int n1, int n2) {
  DenseMatrix Y(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) Y(i, j) = rng.normal();
  }
  return Y;
}

// --- criterion 1 universe: random matrices up to 30 x 20 ------------------

struct MatrixInstance {
  DenseMatrix Y;
  double top = 0.0;
};

MatrixInstance criterion1_instance(int index) {
  Rng rng(mix_seed(kMasterSeed, 100 + index));
  const int n1 = rng.uniform_int(2, 30);
  const int n2 = rng.uniform_int(2, 20);
  MatrixInstance instance{random_gaussian(rng, n1, n2), 0.0};
  instance.top = thin_svd(instance.Y).sigma.top();
  return instance;
}

// --- criterion 2 universe: random spectra with exact ties -----------------

struct SpectrumInstance {
  SingularSpectrum sigma;
  double tau_fraction = 0.5;  // tau = fraction * sigma^1
};

SpectrumInstance criterion2_instance(int index) {
  Rng rng(mix_seed(kMasterSeed, 5000 + index));
  const int r = rng.uniform_int(1, 20);
  std::vector<double> values(r);
  for (double& v : values) v = 0.05 + 2.0 * std::abs(rng.normal());
  std::sort(values.begin(), values.end(), std::greater<>());
  if (r >= 2 && index % 3 == 0) {
    const int k = rng.uniform_int(0, r - 2);
    values[k + 1] = values[k];  // exact tie
  }
  SpectrumInstance instance;
  instance.sigma = make_spectrum(std::move(values));
  instance.tau_fraction = rng.uniform(0.02, 0.98);
  return instance;
}

bool has_tie(const SingularSpectrum& sigma) {
  for (int i = 1; i < sigma.rank(); ++i) {
    if (sigma.values[i] == sigma.values[i - 1]) return true;
  }
  return false;
}

// embeds a spectrum into a dense matrix through seeded orthonormal factors
DenseMatrix embed_spectrum(const SingularSpectrum& sigma, std::uint64_t seed) {
  Rng rng(seed);
  const int r = sigma.rank();
  const int n1 = r + rng.uniform_int(0, 3);
  const int n2 = r + rng.uniform_int(0, 3);
  const Eigen::HouseholderQR<DenseMatrix> qr_u(random_gaussian(rng, n1, r));
  const Eigen::HouseholderQR<DenseMatrix> qr_v(random_gaussian(rng, n2, r));
  const DenseMatrix U = qr_u.householderQ() * DenseMatrix::Identity(n1, r);
  const DenseMatrix V = qr_v.householderQ() * DenseMatrix::Identity(n2, r);
  const Eigen::VectorXd diag =
      Eigen::Map<const Eigen::VectorXd>(sigma.values.data(), r);
  return U * diag.asDiagonal() * V.transpose();
}

// === criterion 1: prox with linear f coincides with plain soft thresholding

Outcome criterion1() {
  Outcome outcome;
  const SpectralFunction fn = make_builtin("linear");
  double worst = 0.0;
  for (int index = 0; index < 100; ++index) {
    const MatrixInstance instance = criterion1_instance(index);
    for (double fraction : {0.1 / 10.0, 1.0 / 10.0, 5.0 / 10.0}) {
      const double tau = fraction * instance.top;
      const ProxResult prox = generalized_svt(instance.Y, fn, tau);
      const DenseMatrix direct = soft_threshold_matrix(instance.Y, tau);
      const double deviation = (prox.X_hat - direct).cwiseAbs().maxCoeff();
      const double bound = 1e-9 * std::max(1.0, instance.Y.norm());
      worst = std::max(worst, deviation / bound);
      if (deviation > bound) {
        outcome.fail("instance " + std::to_string(index) + " deviation " +
                     eng(deviation) + " above " + eng(bound));
      }
    }
  }
  outcome.detail =
      "300 prox calls, worst deviation at " + eng(worst) + " of the bound" +
      (outcome.passed ? "" : "; " + outcome.detail);
  return outcome;
}

// === criterion 2: unique admissible index; monotone scan sequence =========

Outcome criterion2() {
  Outcome outcome;
  const double inf = std::numeric_limits<double>::infinity();
  int ties_seen = 0;
  for (int index = 0; index < 200; ++index) {
    const SpectrumInstance instance = criterion2_instance(index);
    if (has_tie(instance.sigma)) ++ties_seen;
    const double tau = instance.tau_fraction * instance.sigma.top();
    const auto sums = partial_sums(instance.sigma);
    for (const std::string& spec : kBuiltins) {
      const SpectralFunction fn = make_builtin(spec);
      std::vector<double> roots(instance.sigma.rank());
      int hits = 0;
      int first_hit = 0;
      for (int j = 1; j <= instance.sigma.rank(); ++j) {
        roots[j - 1] = solve_scalar_equation(fn, sums[j - 1], j, tau).t;
        const double upper = instance.sigma.values[j - 1];
        const double lower =
            j < instance.sigma.rank() ? instance.sigma.values[j] : -inf;
        if (lower <= roots[j - 1] && roots[j - 1] < upper) {
          ++hits;
          if (hits == 1) first_hit = j;
        }
      }
      if (hits != 1) {
        outcome.fail("instance " + std::to_string(index) + " fn=" + spec +
                     " has " + std::to_string(hits) + " admissible indices");
        continue;
      }
      if (spec == "linear") {
        // g is constant, so every root equals tau; strict growth is vacuous
        for (int j = 1; j <= first_hit; ++j) {
          if (std::abs(roots[j - 1] - tau) > 1e-9 * std::max(1.0, tau)) {
            outcome.fail("instance " + std::to_string(index) +
                         " linear root drifts from tau");
          }
        }
      } else {
        for (int j = 2; j <= first_hit; ++j) {
          if (!(roots[j - 1] > roots[j - 2])) {
            outcome.fail("instance " + std::to_string(index) + " fn=" + spec +
                         " t-sequence not strictly increasing at j=" +
                         std::to_string(j));
          }
        }
        for (int j = 1; j <= first_hit; ++j) {
          if (!(roots[j - 1] < instance.sigma.values[j - 1])) {
            outcome.fail("instance " + std::to_string(index) + " fn=" + spec +
                         " t_j >= sigma^j before j*");
          }
        }
      }
    }
  }
  outcome.detail = "200 spectra x 4 functions (" + std::to_string(ties_seen) +
                   " with exact ties)" +
                   (outcome.passed ? "" : "; " + outcome.detail);
  if (ties_seen == 0) outcome.fail("universe contains no tied spectra");
  return outcome;
}

// === criterion 3: binary search == sequential scan, log solve budget ======

Outcome criterion3() {
  Outcome outcome;
  int max_solves = 0;
  for (int index = 0; index < 200; ++index) {
    const SpectrumInstance instance = criterion2_instance(index);
    const double tau = instance.tau_fraction * instance.sigma.top();
    for (const std::string& spec : kBuiltins) {
      const SpectralFunction fn = make_builtin(spec);
      const ThresholdResult fast = find_threshold(fn, instance.sigma, tau);
      const ThresholdResult slow =
          linear_scan_threshold(fn, instance.sigma, tau);
      if (fast.j_star != slow.j_star) {
        outcome.fail("instance " + std::to_string(index) + " fn=" + spec +
                     " j* mismatch");
      }
      if (std::abs(fast.t_star - slow.t_star) > 1e-10) {
        outcome.fail("instance " + std::to_string(index) + " fn=" + spec +
                     " t* mismatch " +
                     eng(std::abs(fast.t_star - slow.t_star)));
      }
      const int r = instance.sigma.rank();
      const int budget =
          static_cast<int>(std::ceil(std::log2(static_cast<double>(r)))) + 1;
      max_solves = std::max(max_solves, fast.equation_solves);
      if (fast.equation_solves > budget) {
        outcome.fail("instance " + std::to_string(index) + " fn=" + spec +
                     " used " + std::to_string(fast.equation_solves) +
                     " solves, budget " + std::to_string(budget));
      }
    }
  }
  outcome.detail = "800 searches agree; max " + std::to_string(max_solves) +
                   " equation solves" +
                   (outcome.passed ? "" : "; " + outcome.detail);
  return outcome;
}

// === criterion 4: subgradient certificate across criteria 1-2 instances ===

Outcome criterion4() {
  Outcome outcome;
  int certified = 0;
  int degenerate = 0;

  // criterion 1 matrices under the linear prox
  const SpectralFunction linear = make_builtin("linear");
  for (int index = 0; index < 100; ++index) {
    const MatrixInstance instance = criterion1_instance(index);
    for (double fraction : {0.1 / 10.0, 1.0 / 10.0, 5.0 / 10.0}) {
      const double tau = fraction * instance.top;
      const ProxResult prox = generalized_svt(instance.Y, linear, tau);
      const CertificateReport cert =
          certify_optimality(instance.Y, prox, linear, tau, 1e-7);
      ++certified;
      if (!cert.passed) {
        outcome.fail("criterion-1 instance " + std::to_string(index) + ": " +
                     cert.detail);
      }
    }
  }

  // criterion 2 spectra embedded into dense matrices, all builtins
  for (int index = 0; index < 200; ++index) {
    const SpectrumInstance instance = criterion2_instance(index);
    const DenseMatrix Y =
        embed_spectrum(instance.sigma, mix_seed(kMasterSeed, 9000 + index));
    const double tau = instance.tau_fraction * instance.sigma.top();
    for (const std::string& spec : kBuiltins) {
      const SpectralFunction fn = make_builtin(spec);
      const ProxResult prox = generalized_svt(Y, fn, tau);
      const CertificateReport cert = certify_optimality(Y, prox, fn, tau, 1e-7);
      ++certified;
      if (!cert.passed) {
        outcome.fail("embedded instance " + std::to_string(index) +
                     " fn=" + spec + ": " + cert.detail);
      }
    }
  }

  // degenerate zero-minimizer cases (W = Y/tau branch); the zero branch is
  // stationary exactly when g(0) = 1, i.e. for linear and exp
  for (const std::string& spec : {std::string("linear"), std::string("exp")}) {
    const SpectralFunction fn = make_builtin(spec);
    for (int index = 0; index < 25; ++index) {
      Rng rng(mix_seed(kMasterSeed, 12000 + index));
      const DenseMatrix Y =
          random_gaussian(rng, rng.uniform_int(2, 10), rng.uniform_int(2, 10));
      const double top = thin_svd(Y).sigma.top();
      const double tau = top * (index == 0 ? 1.0 : rng.uniform(1.0, 2.0));
      const ProxResult prox = generalized_svt(Y, fn, tau);
      if (prox.retained_rank != 0 || prox.X_hat.norm() != 0.0) {
        outcome.fail("degenerate instance not mapped to the zero matrix");
        continue;
      }
      const CertificateReport cert = certify_optimality(Y, prox, fn, tau, 1e-7);
      ++certified;
      ++degenerate;
      if (!cert.passed) {
        outcome.fail("degenerate " + spec + " instance " +
                     std::to_string(index) + ": " + cert.detail);
      }
    }
  }

  // negative control: a perturbed minimizer must be rejected
  int controls = 0;
  for (int index = 0; index < 100; index += 10) {
    const MatrixInstance instance = criterion1_instance(index);
    const double tau = 0.1 * instance.top;
    ProxResult prox = generalized_svt(instance.Y, linear, tau);
    if (prox.retained_rank == 0) continue;
    const ThinSVD factors = thin_svd(prox.X_hat);
    prox.X_hat += 0.1 * factors.U.col(0) * factors.V.col(0).transpose();
    prox.nuclear_norm += 0.1;
    ++controls;
    if (certify_optimality(instance.Y, prox, linear, tau, 1e-7).passed) {
      outcome.fail("perturbed minimizer at instance " + std::to_string(index) +
                   " was not rejected");
    }
  }
  if (controls == 0) outcome.fail("no negative-control instances ran");

  outcome.detail = std::to_string(certified) + " certificates (" +
                   std::to_string(degenerate) + " degenerate), " +
                   std::to_string(controls) + " negative controls" +
                   (outcome.passed ? "" : "; " + outcome.detail);
  return outcome;
}

// === criterion 5: oracle equivalence ======================================

Outcome criterion5() {
  Outcome outcome;
  double worst_spectral = 0.0;
  for (int fn_index = 0; fn_index < static_cast<int>(kBuiltins.size());
       ++fn_index) {
    const SpectralFunction fn = make_builtin(kBuiltins[fn_index]);
    for (int trial = 0; trial < 50; ++trial) {
      Rng rng(mix_seed(kMasterSeed, 20000 + fn_index * 1000 + trial));
      const int r = rng.uniform_int(1, 6);
      std::vector<double> values(r);
      for (double& v : values) v = rng.uniform(0.1, 1.4);
      std::sort(values.begin(), values.end(), std::greater<>());
      const SingularSpectrum sigma = make_spectrum(std::move(values));
      const double tau = rng.uniform(0.05, 0.9) * sigma.top();

      const ThresholdResult threshold = find_threshold(fn, sigma, tau);
      const std::vector<double> expected = shrink(sigma, threshold.t_star);
      const OracleSolution solution =
          spectral_prox_oracle(sigma, fn, tau, 4'000'000);
      const auto& minimizer = std::get<std::vector<double>>(solution.minimizer);
      if (!solution.converged) {
        outcome.fail("spectral oracle did not converge (fn=" + fn.label +
                     " trial " + std::to_string(trial) + ")");
        continue;
      }
      for (std::size_t i = 0; i < expected.size(); ++i) {
        const double deviation = std::abs(minimizer[i] - expected[i]);
        worst_spectral = std::max(worst_spectral, deviation);
        if (deviation > 1e-6) {
          outcome.fail("spectral deviation " + eng(deviation) +
                       " (fn=" + fn.label + " trial " + std::to_string(trial) +
                       ")");
        }
      }
    }
  }

  double worst_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(mix_seed(kMasterSeed, 30000 + trial));
    const SpectralFunction fn = make_builtin(kBuiltins[trial % 4]);
    const DenseMatrix Y =
        random_gaussian(rng, rng.uniform_int(2, 4), rng.uniform_int(2, 4));
    const double tau = rng.uniform(0.15, 0.7) * thin_svd(Y).sigma.top();
    const ProxResult prox = generalized_svt(Y, fn, tau);
    const OracleSolution oracle = matrix_prox_oracle(Y, fn, tau, 120'000);
    const double gap = oracle.objective - prox.objective;
    worst_gap = std::max(worst_gap, std::abs(gap));
    if (gap < -1e-6 || gap > 1e-3 * std::abs(prox.objective)) {
      outcome.fail("matrix oracle gap " + eng(gap) + " at trial " +
                   std::to_string(trial) + " (fn=" + fn.label + ")");
    }
  }

  outcome.detail = "spectral worst dev " + eng(worst_spectral) +
                   ", matrix worst |gap| " + eng(worst_gap) +
                   (outcome.passed ? "" : "; " + outcome.detail);
  return outcome;
}

// === criterion 6: quadratic closed form ===================================

Outcome criterion6() {
  Outcome outcome;
  const SpectralFunction fn = make_builtin("quadratic");
  double worst = 0.0;
  for (int index = 0; index < 200; ++index) {
    const SpectrumInstance instance = criterion2_instance(index);
    const double tau = instance.tau_fraction * instance.sigma.top();
    const ThresholdResult result = find_threshold(fn, instance.sigma, tau);
    if (result.j_star < 1) {
      outcome.fail("unexpected degenerate branch at instance " +
                   std::to_string(index));
      continue;
    }
    const double S = partial_sums(instance.sigma)[result.j_star - 1];
    const int j = result.j_star;
    const double closed_form = 2.0 * tau * S / (1.0 + 2.0 * j * tau);
    // independent substitution check of the formula itself
    const double lhs = tau * 2.0 * (S - j * closed_form);
    if (std::abs(lhs - closed_form) > 1e-9 * std::max(1.0, closed_form)) {
      outcome.fail("closed form fails substitution at instance " +
                   std::to_string(index));
    }
    const double deviation = std::abs(result.t_star - closed_form);
    worst = std::max(worst, deviation);
    if (deviation > 1e-10) {
      outcome.fail("instance " + std::to_string(index) + " |t* - closed| = " +
                   eng(deviation));
    }
  }
  outcome.detail = "200 instances, worst |t* - closed form| = " + eng(worst) +
                   (outcome.passed ? "" : "; " + outcome.detail);
  return outcome;
}

// === criterion 7: completion solver sanity on the seeded fixture ==========

Outcome criterion7() {
  Outcome outcome;
  auto fixture = make_low_rank_fixture(2026, 50, 50, 2, 0.6);
  fixture.problem.fn = make_builtin("linear");

  double best_recovery = std::numeric_limits<double>::infinity();
  double best_lambda = 0.0;
  for (double lambda : {2.0, 1.0, 0.5, 0.2, 0.1, 0.05, 0.02}) {
    fixture.problem.lambda = lambda;
    const SolveReport report = solve_pgd(fixture.problem, 2000, 1e-9);
    if (!report.converged) {
      outcome.fail("pgd did not converge at lambda=" + eng(lambda));
      continue;
    }
    for (std::size_t k = 1; k < report.objective_trace.size(); ++k) {
      if (report.objective_trace[k] > report.objective_trace[k - 1] + 1e-9) {
        outcome.fail("objective trace increased at lambda=" + eng(lambda));
        break;
      }
    }
    const double recovery =
        (report.X - fixture.truth).norm() / fixture.truth.norm();
    if (recovery < best_recovery) {
      best_recovery = recovery;
      best_lambda = lambda;
    }
  }
  if (best_recovery > 1e-2) {
    outcome.fail("best recovery " + eng(best_recovery) + " above 1e-2");
  }

  fixture.problem.lambda = best_lambda;
  const SolveReport plain = solve_pgd(fixture.problem, 2000, 1e-9);
  const SolveReport fast = solve_accelerated(fixture.problem, 2000, 1e-9);
  const double plain_objective = plain.objective_trace.back();
  const double fast_objective = fast.objective_trace.back();
  const double relative_difference =
      std::abs(fast_objective - plain_objective) /
      std::max(1.0, std::abs(plain_objective));
  if (!fast.converged) outcome.fail("accelerated solver did not converge");
  if (relative_difference > 1e-6) {
    outcome.fail("accelerated objective differs by " +
                 eng(relative_difference));
  }

  outcome.detail = "best lambda " + eng(best_lambda) + ": recovery " +
                   eng(best_recovery) + ", accelerated objective within " +
                   eng(relative_difference) +
                   (outcome.passed ? "" : "; " + outcome.detail);
  return outcome;
}

// === criterion 8: verify determinism through the CLI ======================

std::string run_verify_capture(const std::string& out_path) {
  const std::string command = std::string(SVTPROX_CLI_PATH) +
                              " verify --seed 42 > " + out_path +
                              " 2>/dev/null";
  if (std::system(command.c_str()) != 0) return "";
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome criterion8() {
  Outcome outcome;
  namespace fs = std::filesystem;
  const std::string base =
      (fs::temp_directory_path() / "svtprox_acceptance_verify").string();
  const std::string first = run_verify_capture(base + "_1.txt");
  const std::string second = run_verify_capture(base + "_2.txt");
  std::remove((base + "_1.txt").c_str());
  std::remove((base + "_2.txt").c_str());

  if (first.empty() || second.empty()) {
    outcome.fail("verify run failed or produced no output");
  } else if (first != second) {
    outcome.fail("the two verify summaries differ");
  } else if (first.find("RESULT: PASS") == std::string::npos) {
    outcome.fail("verify reported failures");
  }
  outcome.detail =
      "two `verify --seed 42` runs, " + std::to_string(first.size()) +
      " bytes each" + (outcome.passed ? ", byte-identical" : "; " + outcome.detail);
  return outcome;
}

struct Criterion {
  int number;
  std::string name;
  std::function<Outcome()> run;
  double time_limit;  // seconds; 0 = none stated
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "linear-f prox equals plain soft thresholding", criterion1, 10.0},
      {2, "unique admissible index and monotone scan sequence", criterion2,
       10.0},
      {3, "binary search matches the sequential scan in log solves",
       criterion3, 0.0},
      {4, "subgradient certificate on every prox output", criterion4, 0.0},
      {5, "independent oracles agree with the threshold path", criterion5,
       60.0},
      {6, "quadratic threshold matches its closed form", criterion6, 0.0},
      {7, "completion solvers on the seeded 50x50 rank-2 fixture", criterion7,
       60.0},
      {8, "verify --seed 42 is byte-deterministic", criterion8, 0.0},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = criterion.run();
    const double elapsed = seconds_since(start);
    if (criterion.time_limit > 0.0 && elapsed > criterion.time_limit) {
      outcome.fail("runtime " + eng(elapsed) + " s exceeds " +
                   eng(criterion.time_limit) + " s");
    }
    std::printf("%s criterion %d: %s (%s; %.2f s)\n",
                outcome.passed ? "PASS" : "FAIL", criterion.number,
                criterion.name.c_str(), outcome.detail.c_str(), elapsed);
    if (!outcome.passed) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
