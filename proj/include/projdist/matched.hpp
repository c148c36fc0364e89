#pragma once

#include "projdist/idempotent.hpp"
#include "projdist/matrix.hpp"

namespace projdist {

// Distance landscape of one idempotent Q: the nearest projection m(Q), the
// extreme Frobenius distances attainable by projections, and the two range
// projection distances lambda1 = ‖P_R(Q) - Q‖_F, lambda2 = ‖I - P_R(Q) - Q‖_F.
// Invariants: min ≤ lambda1 ≤ lambda2 ≤ max, lambda2² = lambda1² + n, and
// min² + max² = invariant_constant.
struct MatchedResult {
  Projection m_q;
  double min_distance;
  double max_distance;
  double lambda1;
  double lambda2;
  double invariant_constant;
};

// Nearest projection to Q in Frobenius norm,
//   m(Q) = (1/2)(|Q*| + Q*) |Q*|^+ (|Q*| + I)^{-1} (|Q*| + Q).
// Fixes every projection: m(P) = P.
Projection matched_projection(const Idempotent& q);

// Same projection computed from a block form Q = U*[[I_r, A],[0,0]]U through
// B = (I + AA*)^{1/2}. Independent route used to cross-check
// matched_projection.
Projection matched_projection_block(const BlockForm& bf);

// ‖m(Q) - Q‖_F by the closed form sqrt(sum σ_i² - σ_i) over the nonzero
// singular values of Q, without forming m(Q).
double matched_distance(const Idempotent& q);

MatchedResult analyze(const Idempotent& q);

// ‖m(Q)‖_F, equal to sqrt(rank Q).
double norm_of_matched(const Idempotent& q);

// The factor V with VV* = m(Q) and V*V = P_R(Q),
//   V = (sqrt2/2)(|Q*| + Q*)(|Q*|^+)^{1/2}(|Q*| + I)^{-1/2}.
ComplexMatrix factor_v(const Idempotent& q);

}  // namespace projdist
