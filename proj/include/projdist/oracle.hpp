#pragma once

#include <cstdint>
#include <utility>

#include "projdist/idempotent.hpp"
#include "projdist/matrix.hpp"

namespace projdist {

enum class OracleMethod { grid2, sampled };

// Brute-force search result: the best projection found and its distance,
// recomputed from the stored projection so the two agree to 1e-12.
struct OracleResult {
  double best_distance;
  Projection best_projection;
  long samples_evaluated;
  OracleMethod method;
};

// Exhaustive (up to grid spacing) minimization over the projections of C².
// Rank-1 projections are exactly the points (1/2)(I + x·sx + y·sy + z·sz) of
// the unit sphere, so the grid {0, I} ∪ sphere lattice covers everything.
// grid_resolution R yields R² lattice points. If Q itself is a projection it
// joins the candidate set, making the minimum exact in that case.
OracleResult grid_min_2x2(const Idempotent& q, int grid_resolution);

// Stochastic search for both extremes at n ≤ 8: random projections of every
// rank plus the deterministic candidates m(Q), I-m(Q), P_R(Q), I-P_R(Q).
// Returns (min, max). Asserts that no sample beats either closed-form bound.
std::pair<OracleResult, OracleResult> sampled_extrema(const Idempotent& q, long num_samples,
                                                      std::uint64_t seed);

}  // namespace projdist
