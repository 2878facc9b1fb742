#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace svtprox {

// Thrown when a function-spec string does not describe an admissible
// regularizer (unknown name, negative coefficient, g(0) > 1, ...).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A scalar regularizer f together with its exact derivative g = f'.
// Admissible instances satisfy g >= 0 and g nondecreasing on [0, inf)
// and g(0) <= 1.  Values are immutable after construction and safe to
// evaluate concurrently.
struct SpectralFunction {
  std::function<double(double)> f;
  std::function<double(double)> g;
  std::string label;
};

// Builtins: "linear" (f=x), "quadratic" (f=x^2), "exp" (f=e^x), and
// "poly:c1,c2,...,ck" (f = sum c_i x^i with c_i >= 0 and c_1 <= 1).
// Throws SpecError on anything else.
SpectralFunction make_builtin(const std::string& spec);

struct ValidationReport {
  bool passed = true;
  std::string first_violation;  // empty when passed
};

// Samples fn on a uniform grid over [0, 100] and checks the admissibility
// hypotheses: g >= 0, g nondecreasing, g(0) <= 1, and a central finite
// difference of f against g (h = 1e-5, 1e-6 relative).  Sampling cannot
// prove convexity globally; this is a best-effort guard.  Violations are
// reported, not thrown.  sample_count must be >= 2.
ValidationReport validate(const SpectralFunction& fn, int sample_count);

}  // namespace svtprox
