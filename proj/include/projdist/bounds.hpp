#pragma once

#include <utility>
#include <vector>

#include "projdist/idempotent.hpp"
#include "projdist/matrix.hpp"

namespace projdist {

// Evaluation of the sandwich lambda ≤ ‖P - Q‖_F ≤ sqrt2·lambda for one pair
// with PQ = Q, where lambda = sqrt(‖m(Q)-Q‖_F² + rank(P) - rank(Q)), plus the
// pseudoinverse variant ‖P - Q†‖_F ≤ sqrt2·sqrt(1+‖Q†Q-QQ†‖₂²)·lambda.
// The *_tight flags are advisory equality diagnostics at 1e-7 slack: the
// lower bound is attained exactly when Q is a projection, the upper ones
// exactly when P = Q = P_R(Q).
struct BoundReport {
  double distance;
  double lambda_pq;
  bool lower_ok;
  bool upper_ok;
  double pinv_distance;
  double pinv_coefficient;
  bool pinv_ok;
  bool lower_tight;
  bool upper_tight;
};

// Ratio ‖m(Q)-Q‖_F / ‖P_R(Q)-Q‖_F, always within [sqrt2/2, 1]. Undefined when
// Q is itself a projection (denominator 0); that case is reported through
// `degenerate`, not as an error.
struct BilateralResult {
  bool degenerate;
  double ratio;     // meaningless when degenerate
  double residual;  // how far the ratio pokes outside [sqrt2/2, 1]; ≤ 0 inside
};

// Drazin data of a square A: the index k (smallest j with
// rank(A^j) = rank(A^{j+1})), the Drazin inverse A^d, and the two derived
// idempotents AA† (a projection) and AA^d.
struct DrazinResult {
  int index;
  ComplexMatrix a_d;
  Projection aa_dag;
  Idempotent aa_d;
};

struct DrazinFamily {
  ComplexMatrix a;  // the 4n x 4n family matrix
  Idempotent q;     // its square = its Drazin inverse
};

// One point of the sqrt2-optimality scan: ratio_sq is
// ‖AA† - Q_{n,a}‖_F² / (‖m(Q)-Q‖_F² + 1), computed with the minimum distance
// taken both from the closed form and from the generic SVD route.
struct ScanEntry {
  int n;
  double a;
  double ratio_sq;
  double closed_form_min_sq;
  double generic_min_sq;
};

// lambda_{P,Q} = sqrt(‖m(Q)-Q‖_F² + rank(P) - rank(Q)). Requires PQ = Q.
double lambda_bound(const Projection& p, const Idempotent& q);

BoundReport check_bounds(const Projection& p, const Idempotent& q);

BilateralResult bilateral_check(const Idempotent& q);

DrazinResult drazin(const ComplexMatrix& a);

// check_bounds applied to P = AA†, Q = AA^d (PQ = Q holds automatically).
BoundReport drazin_corollaries(const ComplexMatrix& a);

// Q_a = [[1, a], [0, 0]], the 2x2 family with closed-form distances.
Idempotent q_family(double a);

// A_{n,a} = [[I_2n, aI_2n], [0, J_n]] with J_n the 2n x 2n nilpotent holding a
// single 1 at (0,1); A² equals the idempotent Q_{n,a} = [[I_2n, a(I_2n+J_n)],
// [0, 0]], which is also the Drazin inverse of A (index 2).
DrazinFamily drazin_family(int n, double a);

std::vector<ScanEntry> sqrt2_optimality_scan(const std::vector<int>& n_values,
                                             const std::vector<double>& a_values);

}  // namespace projdist
