#pragma once

#include <cstdint>
#include <string>

namespace svtprox {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int trials = 50;  // per suite per builtin function
};

struct VerifyOutcome {
  bool all_passed = true;
  std::string summary;        // deterministic table, byte-identical per seed
  std::string failure_repro;  // JSON of the first failing instance, empty if none
};

// Seeded verification of the prox against the independent oracles and the
// subgradient certificate, per builtin function:
//   spectral-oracle : shrink(sigma, t*) vs the projected-gradient oracle
//   certificate     : certify_optimality on random prox instances
//   matrix-oracle   : objective gap vs the subgradient oracle, <= 4x4
// Trials are seeded by index, so results do not depend on execution order.
VerifyOutcome run_verification(const VerifyOptions& options);

}  // namespace svtprox
