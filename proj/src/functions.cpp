#include "svtprox/functions.hpp"

#include <charconv>
#include <cmath>
#include <vector>

namespace svtprox {

namespace {

std::vector<double> parse_coefficients(const std::string& list) {
  std::vector<double> coeffs;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::size_t end = (comma == std::string::npos) ? list.size() : comma;
    const char* first = list.data() + pos;
    const char* last = list.data() + end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
      throw SpecError("poly spec: bad coefficient '" +
                      std::string(first, last) + "'");
    }
    coeffs.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return coeffs;
}

SpectralFunction make_polynomial(const std::string& list) {
  const std::vector<double> coeffs = parse_coefficients(list);
  if (coeffs.empty()) throw SpecError("poly spec: no coefficients");
  for (double c : coeffs) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw SpecError("poly spec: coefficients must be finite and >= 0");
    }
  }
  if (coeffs.front() > 1.0) {
    throw SpecError("poly spec: coefficient of x exceeds 1, so g(0) > 1");
  }
  SpectralFunction fn;
  fn.f = [coeffs](double x) {
    // Horner on f(x) = c1 x + c2 x^2 + ... + ck x^k
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = acc * x + *it;
    return acc * x;
  };
  fn.g = [coeffs](double x) {
    double acc = 0.0;
    double degree = static_cast<double>(coeffs.size());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it, degree -= 1.0)
      acc = acc * x + degree * *it;
    return acc;
  };
  fn.label = "poly:" + list;
  return fn;
}

}  // namespace

SpectralFunction make_builtin(const std::string& spec) {
  if (spec == "linear") {
    return {[](double x) { return x; }, [](double) { return 1.0; }, "linear"};
  }
  if (spec == "quadratic") {
    return {[](double x) { return x * x; }, [](double x) { return 2.0 * x; },
            "quadratic"};
  }
  if (spec == "exp") {
    return {[](double x) { return std::exp(x); },
            [](double x) { return std::exp(x); }, "exp"};
  }
  if (spec.rfind("poly:", 0) == 0) {
    return make_polynomial(spec.substr(5));
  }
  throw SpecError("unknown function spec '" + spec + "'");
}

ValidationReport validate(const SpectralFunction& fn, int sample_count) {
  if (sample_count < 2) {
    throw std::invalid_argument("validate: sample_count must be >= 2");
  }
  std::vector<double> grid(sample_count);
  for (int i = 0; i < sample_count; ++i) {
    grid[i] = 100.0 * static_cast<double>(i) / (sample_count - 1);
  }

  for (double x : grid) {
    if (!(fn.g(x) >= 0.0)) {
      return {false, "g(x) >= 0 violated at x=" + std::to_string(x)};
    }
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (fn.g(grid[i]) < fn.g(grid[i - 1])) {
      return {false,
              "g nondecreasing violated at x=" + std::to_string(grid[i])};
    }
  }
  if (!(fn.g(0.0) <= 1.0)) {
    return {false, "g(0) <= 1 violated"};
  }
  const double h = 1e-5;
  for (double x : grid) {
    const double fd = (fn.f(x + h) - fn.f(x - h)) / (2.0 * h);
    const double gx = fn.g(x);
    if (std::abs(fd - gx) > 1e-6 * std::max(1.0, std::abs(gx))) {
      return {false, "finite difference of f disagrees with g at x=" +
                         std::to_string(x)};
    }
  }
  return {true, ""};
}

}  // namespace svtprox
