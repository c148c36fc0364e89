#include "projdist/matched.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "projdist/linalg.hpp"

namespace projdist {

namespace {

std::string format_residual(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

Projection validate_or_numeric(Eigen::MatrixXcd m, const char* who) {
  m = 0.5 * (m + m.adjoint().eval());
  try {
    return validate_projection(ComplexMatrix(std::move(m)));
  } catch (const ValidationError& e) {
    throw NumericError(std::string(who) + ": output failed projection validation: " + e.what());
  }
}

}  // namespace

Projection matched_projection(const Idempotent& q) {
  const Eigen::MatrixXcd& qm = q.matrix().eigen();
  ComplexMatrix aq = abs_conjugate(q.matrix());
  ComplexMatrix aq_pinv = pinv(aq);
  // |Q*| + I has eigenvalues ≥ 1, so this inverse is well conditioned.
  ComplexMatrix shifted_inv = hermitian_apply(aq, [](double x) { return 1.0 / (x + 1.0); });

  Eigen::MatrixXcd m = 0.5 * (aq.eigen() + qm.adjoint()) * aq_pinv.eigen() *
                       shifted_inv.eigen() * (aq.eigen() + qm);
  return validate_or_numeric(std::move(m), "matched_projection");
}

Projection matched_projection_block(const BlockForm& bf) {
  const Eigen::Index n = bf.dim();
  const int r = bf.r;
  const Eigen::MatrixXcd& a = bf.a.eigen();

  // All four blocks are functions of H = I + AA* = W diag(mu) W*, mu ≥ 1,
  // through B = H^{1/2}: one eigendecomposition covers B^{-1}, (B+I)B^{-1}
  // and [B(B+I)]^{-1}.
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(r, r) + a * a.adjoint();
  HermitianEigen he = hermitian_eigen(ComplexMatrix(std::move(h)));
  Eigen::VectorXd top(r), binv(r), middle(r);
  for (int i = 0; i < r; ++i) {
    const double mu = he.values[static_cast<std::size_t>(i)];
    if (mu < 1.0 - 1e-6) {
      throw NumericError("matched_projection_block: eigenvalue of I + AA* is " +
                         format_residual(mu) + ", below 1");
    }
    const double s = std::sqrt(std::max(mu, 1.0));
    top(i) = (s + 1.0) / s;           // (B+I)B^{-1}
    binv(i) = 1.0 / s;                // B^{-1}
    middle(i) = 1.0 / (s * (s + 1.0));  // [B(B+I)]^{-1}
  }
  const Eigen::MatrixXcd& w = he.vectors.eigen();
  Eigen::MatrixXcd block(n, n);
  block.topLeftCorner(r, r) = w * top.asDiagonal() * w.adjoint();
  Eigen::MatrixXcd binv_a = w * binv.asDiagonal() * w.adjoint() * a;
  block.topRightCorner(r, n - r) = binv_a;
  block.bottomLeftCorner(n - r, r) = binv_a.adjoint();
  block.bottomRightCorner(n - r, n - r) = a.adjoint() * (w * middle.asDiagonal() * w.adjoint()) * a;
  Eigen::MatrixXcd m = 0.5 * bf.u.eigen().adjoint() * block * bf.u.eigen();
  return validate_or_numeric(std::move(m), "matched_projection_block");
}

double matched_distance(const Idempotent& q) {
  SvdResult dec = svd(q.matrix());
  const double sigma_max = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
  const double cutoff = rank_cutoff(q.matrix(), sigma_max);
  // sigma^2 - sigma carries rounding of size eps * sigma_max^2 per value; the
  // square root amplifies a dust-sized sum to sqrt(eps) scale, so terms below
  // the rounding resolution are dropped. A projection then maps to exactly 0.
  const double term_floor = static_cast<double>(q.dim()) *
                            std::numeric_limits<double>::epsilon() * (1.0 + sigma_max) *
                            (1.0 + sigma_max);
  double sum = 0.0;
  for (double s : dec.singular_values) {
    if (s <= cutoff) continue;
    const double term = s * s - s;
    if (term < -term_floor && term < -1e-10) {
      throw NumericError("matched_distance: negative radicand term " + format_residual(term) +
                         " (a nonzero singular value dropped below 1)");
    }
    if (term > term_floor) sum += term;
  }
  return std::sqrt(sum);
}

MatchedResult analyze(const Idempotent& q) {
  const Eigen::Index n = q.dim();
  const Eigen::MatrixXcd& qm = q.matrix().eigen();
  Projection m_q = matched_projection(q);
  Projection p_range = range_projection(q);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

  const double min_distance = matched_distance(q);
  const double max_distance = (id - m_q.matrix().eigen() - qm).norm();
  const double lambda1 = (p_range.matrix().eigen() - qm).norm();
  const double lambda2 = (id - p_range.matrix().eigen() - qm).norm();
  const double invariant_constant =
      (id - qm.adjoint() - qm + 2.0 * qm * qm.adjoint()).trace().real();

  if (min_distance > lambda1 + 1e-9 || lambda1 > lambda2 + 1e-9 ||
      lambda2 > max_distance + 1e-9) {
    throw NumericError("analyze: distance ordering violated: " + format_residual(min_distance) +
                       ", " + format_residual(lambda1) + ", " + format_residual(lambda2) + ", " +
                       format_residual(max_distance));
  }
  const double lambda2_expected = std::sqrt(lambda1 * lambda1 + static_cast<double>(n));
  if (std::abs(lambda2 - lambda2_expected) > 1e-8) {
    throw NumericError("analyze: lambda2 deviates from sqrt(lambda1^2 + n) by " +
                       format_residual(std::abs(lambda2 - lambda2_expected)));
  }
  const double sum_sq = min_distance * min_distance + max_distance * max_distance;
  if (std::abs(sum_sq - invariant_constant) > 1e-7) {
    throw NumericError("analyze: min^2 + max^2 deviates from the invariant constant by " +
                       format_residual(std::abs(sum_sq - invariant_constant)));
  }
  return MatchedResult{std::move(m_q), min_distance, max_distance,
                       lambda1,        lambda2,      invariant_constant};
}

double norm_of_matched(const Idempotent& q) {
  return frobenius_norm(matched_projection(q).matrix());
}

ComplexMatrix factor_v(const Idempotent& q) {
  const Eigen::MatrixXcd& qm = q.matrix().eigen();
  ComplexMatrix aq = abs_conjugate(q.matrix());
  ComplexMatrix root_pinv = sqrtm_psd(pinv(aq));
  ComplexMatrix shifted_root_inv =
      hermitian_apply(aq, [](double x) { return 1.0 / std::sqrt(x + 1.0); });

  Eigen::MatrixXcd v = (std::sqrt(2.0) / 2.0) * (aq.eigen() + qm.adjoint()) *
                       root_pinv.eigen() * shifted_root_inv.eigen();

  const double left_residual = (v * v.adjoint() - matched_projection(q).matrix().eigen()).norm();
  const double right_residual =
      (v.adjoint() * v - range_projection(q).matrix().eigen()).norm();
  if (left_residual > 1e-7 || right_residual > 1e-7) {
    throw NumericError("factor_v: VV* residual " + format_residual(left_residual) +
                       ", V*V residual " + format_residual(right_residual));
  }
  return ComplexMatrix(std::move(v));
}

}  // namespace projdist
