#pragma once

#include <cstdint>

#include "svtprox/rng.hpp"
#include "svtprox/solvers.hpp"

namespace svtprox_tests {

struct CompletionFixture {
  svtprox::DenseMatrix truth;
  svtprox::CompletionProblem problem;  // lambda/fn left for the caller
};

// Seeded low-rank completion instance: truth = A * B^T with standard normal
// factors, each entry observed independently with the given probability.
inline CompletionFixture make_low_rank_fixture(std::uint64_t seed, int n1,
                                               int n2, int rank,
                                               double observed_fraction) {
  svtprox::Rng rng(seed);
  svtprox::DenseMatrix A(n1, rank);
  svtprox::DenseMatrix B(n2, rank);
  for (int i = 0; i < n1; ++i) {
    for (int k = 0; k < rank; ++k) A(i, k) = rng.normal();
  }
  for (int j = 0; j < n2; ++j) {
    for (int k = 0; k < rank; ++k) B(j, k) = rng.normal();
  }

  CompletionFixture fixture;
  fixture.truth = A * B.transpose();
  fixture.problem.n1 = n1;
  fixture.problem.n2 = n2;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (rng.uniform() < observed_fraction) {
        fixture.problem.observed.push_back({i, j, fixture.truth(i, j)});
      }
    }
  }
  return fixture;
}

}  // namespace svtprox_tests
