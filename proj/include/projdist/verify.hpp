#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "projdist/matrix.hpp"

namespace projdist::verify {

// Outcome of one property suite. On failure, `counterexample` carries the
// offending matrices (name -> matrix) so callers can serialize them.
struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string message;
  std::vector<std::pair<std::string, ComplexMatrix>> counterexample;
};

struct Scale {
  std::uint64_t seed = 42;
  int trials = 200;
  int max_dim = 6;
};

// Every property suite at the given scale, in a fixed order. Deterministic
// per seed.
std::vector<SuiteResult> run_all(const Scale& scale);

// Intentionally failing suite with a serialized counterexample, used to
// exercise the failure-reporting path end to end.
SuiteResult forced_failure();

// Individual suites. The acceptance harness drives these directly at its own
// pinned scales; run_all invokes them at the Scale above.
SuiteResult norm_ordering(std::uint64_t seed, int trials);
SuiteResult pinv_involution(std::uint64_t seed, int trials);
SuiteResult sqrtm_roundtrip(std::uint64_t seed, int trials);
SuiteResult svd_reconstruction(std::uint64_t seed, int trials);
SuiteResult singular_floor(std::uint64_t seed, int trials, int max_dim);
SuiteResult trace_laws(std::uint64_t seed, int trials, int max_dim);
SuiteResult params_valid(std::uint64_t seed, int trials, int max_dim);
SuiteResult minimality(std::uint64_t seed, int num_idempotents, int projections_per, int max_dim);
SuiteResult uniqueness_proxy(std::uint64_t seed, int num_idempotents, int projections_per,
                             int max_dim);
SuiteResult maximality_and_constant_sum(std::uint64_t seed, int num_idempotents,
                                        int projections_per, int max_dim);
SuiteResult symmetry_and_factorization(std::uint64_t seed, int num_idempotents, int max_dim);
SuiteResult majorization(std::uint64_t seed, int num_random, int num_diagonal,
                         double equality_tol);
SuiteResult path_continuity(std::uint64_t seed, int num_idempotents, int max_dim);
SuiteResult coverage(std::uint64_t seed, int num_idempotents, int alphas_per, int max_dim);
SuiteResult j2_chaining(std::uint64_t seed, int num_idempotents, int max_dim);
SuiteResult dualization(std::uint64_t seed, int num_idempotents, int max_dim);
SuiteResult sandwich(std::uint64_t seed, int num_pairs, int max_dim);
SuiteResult pinv_coefficient(std::uint64_t seed, int trials, int max_dim);
SuiteResult range_vs_any(std::uint64_t seed, int num_idempotents, int projections_per,
                         int max_dim);
SuiteResult drazin_family_norms(std::uint64_t seed);
SuiteResult grid_convergence(std::uint64_t seed, int num_idempotents, int resolution);
SuiteResult no_violation(std::uint64_t seed, int num_idempotents, long samples_per, int max_dim);
SuiteResult io_roundtrip(std::uint64_t seed, int trials);
SuiteResult family_scalar_consistency(std::uint64_t seed);

}  // namespace projdist::verify
