#pragma once

#include <utility>

#include "projdist/idempotent.hpp"
#include "projdist/matrix.hpp"

namespace projdist {

// Segment of the piecewise projection path used by construct_at_distance:
// J1 covers [min_Q, lambda1], J2 covers [lambda1, lambda2] (explicit rotation
// paths), J3 covers [lambda2, max_Q].
enum class Segment { J1, J2, J3 };

const char* segment_name(Segment s);

// One point on the path: a projection at a prescribed Frobenius distance
// from Q, together with where on the path it was found. achieved_distance is
// recomputed from the stored projection, so the two always agree to 1e-10.
struct PathPoint {
  Segment segment;
  int path_index;  // meaningful for J2 only, 0 otherwise
  double t;
  Projection projection;
  double achieved_distance;
};

// Idempotent path Q_t = U*[[I_r, tA],[0,0]]U joining P_R(Q) (t=0) to Q (t=1)
// at constant rank.
Idempotent idempotent_path(const BlockForm& bf, double t);

// Explicit projection path for the middle segment: in the block basis of Q,
// a 2r x 2r rotation block [[c²I, scI],[scI, s²I]] with c = cos(pi t/2),
// s = sin(pi t/2), followed by diag(I_i, 0). Endpoint distances to Q are
// sqrt(lambda1² + i) at t=0 and sqrt(lambda1² + 2r + i) at t=1. Requires
// rank(Q) ≤ n - rank(Q); callers dualize through I - Q* otherwise.
Projection j2_path(const Idempotent& q, int i, double t);

// Projection at Frobenius distance alpha from Q, for any alpha in
// [min_Q, max_Q]. Q must differ from 0 and I. Throws RangeError when alpha
// lies outside the attainable interval by more than tol.
PathPoint construct_at_distance(const Idempotent& q, double alpha, double tol = 1e-8);

// (min_Q, max_Q): the extreme Frobenius distances from projections to Q.
std::pair<double, double> distance_range(const Idempotent& q);

}  // namespace projdist
