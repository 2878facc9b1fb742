#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "svtprox/io.hpp"
#include "svtprox/linalg.hpp"
#include "svtprox/log.hpp"
#include "svtprox/solvers.hpp"
#include "svtprox/verify.hpp"

namespace {

using svtprox::DenseMatrix;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadFunction = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailed = 4;

struct RunConfig {
  std::string input;
  std::string output;
  std::string diag;
  std::string observed;
  std::string f_spec = "linear";
  std::string solver = "pgd";
  double tau = 0.0;
  double lambda = 0.0;
  int max_iters = 2000;
  double tol = 1e-9;
  int rows = 0;
  int cols = 0;
  std::uint64_t seed = 0;
  int trials = 50;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw svtprox::IOError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw svtprox::IOError("write to '" + path + "' failed");
}

int cmd_prox(const RunConfig& config) {
  const svtprox::SpectralFunction fn = svtprox::make_builtin(config.f_spec);
  const DenseMatrix Y = svtprox::read_matrix(config.input);
  svtprox::log_info("prox: input " + std::to_string(Y.rows()) + "x" +
                    std::to_string(Y.cols()) + ", f=" + fn.label);

  const svtprox::ProxResult result = svtprox::generalized_svt(Y, fn, config.tau);
  const svtprox::CertificateReport certificate =
      svtprox::certify_optimality(Y, result, fn, config.tau, 1e-7);

  if (!config.output.empty()) svtprox::write_matrix(config.output, result.X_hat);
  if (!config.diag.empty()) {
    const nlohmann::json diag = {
        {"j_star", result.threshold.j_star},
        {"t_star", result.threshold.t_star},
        {"equation_residual", result.threshold.equation_residual},
        {"bisection_iterations", result.threshold.bisection_iterations},
        {"retained_rank", result.retained_rank},
        {"nuclear_norm", result.nuclear_norm},
        {"objective", result.objective},
        {"certificate",
         {{"passed", certificate.passed},
          {"w_spectral_norm", certificate.w_spectral_norm}}}};
    write_text(config.diag, diag.dump(2) + "\n");
  }
  std::cout << "j_star=" << result.threshold.j_star
            << " t_star=" << svtprox::format_double(result.threshold.t_star)
            << " retained_rank=" << result.retained_rank
            << " objective=" << svtprox::format_double(result.objective)
            << " certificate=" << (certificate.passed ? "pass" : "fail")
            << '\n';
  return kExitOk;
}

int cmd_complete(const RunConfig& config) {
  const svtprox::SpectralFunction fn = svtprox::make_builtin(config.f_spec);
  svtprox::CompletionProblem problem;
  problem.n1 = config.rows;
  problem.n2 = config.cols;
  problem.observed = svtprox::read_observations(config.observed);
  problem.lambda = config.lambda;
  problem.fn = fn;

  svtprox::log_info("complete: " + std::to_string(problem.observed.size()) +
                    " observations, solver=" + config.solver);
  const svtprox::SolveReport report =
      config.solver == "pgd"
          ? svtprox::solve_pgd(problem, config.max_iters, config.tol)
          : svtprox::solve_accelerated(problem, config.max_iters, config.tol);

  if (!config.output.empty()) svtprox::write_matrix(config.output, report.X);
  if (!config.diag.empty()) {
    // thin very long traces; stride 1 means verbatim
    const std::size_t max_points = 2048;
    const std::size_t stride =
        report.objective_trace.size() <= max_points
            ? 1
            : (report.objective_trace.size() + max_points - 1) / max_points;
    nlohmann::json trace = nlohmann::json::array();
    for (std::size_t i = 0; i < report.objective_trace.size(); i += stride) {
      trace.push_back(report.objective_trace[i]);
    }
    if (stride > 1 && (report.objective_trace.size() - 1) % stride != 0) {
      trace.push_back(report.objective_trace.back());
    }
    const nlohmann::json diag = {
        {"iterations", report.iterations},
        {"converged", report.converged},
        {"objective_trace", trace},
        {"objective_trace_stride", stride},
        {"final_relative_change", report.final_relative_change},
        {"retained_rank", report.retained_rank}};
    write_text(config.diag, diag.dump(2) + "\n");
  }
  std::cout << "iterations=" << report.iterations
            << " converged=" << (report.converged ? "true" : "false")
            << " objective="
            << svtprox::format_double(report.objective_trace.back())
            << " retained_rank=" << report.retained_rank << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& config) {
  svtprox::VerifyOptions options;
  options.seed = config.seed;
  options.trials = config.trials;
  const svtprox::VerifyOutcome outcome = svtprox::run_verification(options);
  std::cout << outcome.summary;
  if (!outcome.all_passed) {
    write_text("verify_failure.json", outcome.failure_repro + "\n");
    std::cerr << "first failing instance written to verify_failure.json\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal operator of tau*f(||X||_*) via generalized singular "
               "value thresholding, with completion solvers and brute-force "
               "verification"};
  app.require_subcommand(1);
  RunConfig config;

  CLI::App* prox = app.add_subcommand("prox", "evaluate the prox of tau*f(||X||_*)");
  prox->add_option("--input", config.input, "matrix file (CSV rows)")->required();
  prox->add_option("--tau", config.tau, "prox weight tau > 0")->required();
  prox->add_option("--f", config.f_spec,
                   "function spec: linear|quadratic|exp|poly:c1,c2,...");
  prox->add_option("--output", config.output, "where to write the minimizer");
  prox->add_option("--diag", config.diag, "where to write diagnostics JSON");

  CLI::App* complete = app.add_subcommand("complete", "matrix completion solve");
  complete->add_option("--observed", config.observed,
                       "observed entries file (row,col,value lines)")->required();
  complete->add_option("--rows", config.rows, "matrix rows")->required();
  complete->add_option("--cols", config.cols, "matrix cols")->required();
  complete->add_option("--lambda", config.lambda, "regularization weight")->required();
  complete->add_option("--f", config.f_spec, "function spec");
  complete->add_option("--solver", config.solver, "pgd | fista-style")
      ->check(CLI::IsMember({"pgd", "fista-style"}));
  complete->add_option("--max-iters", config.max_iters, "iteration cap");
  complete->add_option("--tol", config.tol, "relative objective-change tolerance");
  complete->add_option("--output", config.output, "where to write the final iterate");
  complete->add_option("--diag", config.diag, "where to write the solve report JSON");

  CLI::App* verify = app.add_subcommand(
      "verify", "seeded oracle-equivalence and certificate suites");
  verify->add_option("--seed", config.seed, "64-bit seed (default 0)");
  verify->add_option("--trials", config.trials, "trials per suite per builtin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (prox->parsed()) return cmd_prox(config);
    if (complete->parsed()) return cmd_complete(config);
    return cmd_verify(config);
  } catch (const svtprox::SpecError& e) {
    svtprox::log_error(e.what());
    return kExitBadFunction;
  } catch (const svtprox::ConvergenceError& e) {
    svtprox::log_error(e.what());
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    svtprox::log_error(e.what());
    return kExitUsage;
  }
}
