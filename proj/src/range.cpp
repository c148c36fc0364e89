#include "projdist/range.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"

namespace projdist {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

ComplexMatrix scaled_block(const BlockForm& bf, double t) {
  return ComplexMatrix(Eigen::MatrixXcd(t * bf.a.eigen()));
}

// Rotation-block projection in an abstract n-dimensional block basis;
// j2_path conjugates it back by U.
Eigen::MatrixXcd j2_block(Eigen::Index n, int r, int i, double t) {
  const double c = std::cos(kPi * t / 2.0);
  const double s = std::sin(kPi * t / 2.0);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < r; ++k) {
    block(k, k) = c * c;
    block(k, r + k) = s * c;
    block(r + k, k) = s * c;
    block(r + k, r + k) = s * s;
  }
  for (int k = 0; k < i; ++k) block(2 * r + k, 2 * r + k) = 1.0;
  return block;
}

struct Candidate {
  Projection projection;
  double distance;
};

// Distance from Q of a point on one continuous projection path. Bisection
// works on any continuous f with a sign-changing bracket of f - alpha; the
// paths here are not necessarily monotone and need not be.
using PathEval = std::function<Candidate(double)>;

Candidate bisect(const PathEval& eval, double alpha, double tol, Candidate at0, Candidate at1,
                 double* t_out) {
  // Endpoint short circuit keeps alpha = min_Q / lambda1 / max_Q exact.
  if (std::abs(at0.distance - alpha) <= tol) {
    *t_out = 0.0;
    return at0;
  }
  if (std::abs(at1.distance - alpha) <= tol) {
    *t_out = 1.0;
    return at1;
  }
  double lo = 0.0, hi = 1.0;
  double g_lo = at0.distance - alpha;
  double g_hi = at1.distance - alpha;
  if (g_lo * g_hi > 0.0) {
    throw NumericError("construct_at_distance: endpoints " + format_value(at0.distance) +
                       ", " + format_value(at1.distance) + " do not bracket alpha " +
                       format_value(alpha));
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    Candidate c = eval(mid);
    const double g = c.distance - alpha;
    if (std::abs(g) <= tol) {
      *t_out = mid;
      return c;
    }
    if ((g < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
    }
  }
  throw NumericError("construct_at_distance: bisection did not converge in 200 iterations, "
                     "last bracket [" +
                     format_value(lo) + ", " + format_value(hi) + "]");
}

PathPoint make_point(Segment segment, int index, double t, Projection p,
                     const Eigen::MatrixXcd& qm) {
  const double achieved = (p.matrix().eigen() - qm).norm();
  return PathPoint{segment, index, t, std::move(p), achieved};
}

}  // namespace

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::J1: return "J1";
    case Segment::J2: return "J2";
    case Segment::J3: return "J3";
  }
  return "?";
}

Idempotent idempotent_path(const BlockForm& bf, double t) {
  return block_compose(BlockForm{bf.u, scaled_block(bf, t), bf.r});
}

Projection j2_path(const Idempotent& q, int i, double t) {
  const Eigen::Index n = q.dim();
  const int r = q.rank();
  if (r > static_cast<int>(n) - r) {
    throw ValidationError("j2_path: rank " + std::to_string(r) + " exceeds n - rank; dualize first");
  }
  if (i < 0 || i > static_cast<int>(n) - 2 * r) {
    throw ValidationError("j2_path: index " + std::to_string(i) + " outside [0, n - 2r]");
  }
  if (t < 0.0 || t > 1.0) {
    throw ValidationError("j2_path: parameter t = " + format_value(t) + " outside [0, 1]");
  }
  BlockForm bf = block_decompose(q);
  Eigen::MatrixXcd p = bf.u.eigen().adjoint() * j2_block(n, r, i, t) * bf.u.eigen();
  p = 0.5 * (p + p.adjoint().eval());
  return validate_projection(ComplexMatrix(std::move(p)));
}

PathPoint construct_at_distance(const Idempotent& q, double alpha, double tol) {
  const Eigen::Index n = q.dim();
  const int r = q.rank();
  if (r == 0 || r == static_cast<int>(n)) {
    throw ValidationError("construct_at_distance: Q must differ from 0 and I");
  }
  if (!(tol > 0.0)) throw ValidationError("construct_at_distance: tol must be positive");

  const Eigen::MatrixXcd& qm = q.matrix().eigen();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

  BlockForm bf = block_decompose(q);
  const double lambda1 = frobenius_norm(bf.a);
  const double lambda2 = std::sqrt(lambda1 * lambda1 + static_cast<double>(n));
  const double min_q = matched_distance(q);
  Projection m_q = matched_projection(q);
  const double max_q = (id - m_q.matrix().eigen() - qm).norm();

  if (alpha < min_q - tol || alpha > max_q + tol) {
    throw RangeError("construct_at_distance: alpha " + format_value(alpha) +
                     " outside attainable interval [" + format_value(min_q) + ", " +
                     format_value(max_q) + "]");
  }
  alpha = std::clamp(alpha, min_q, max_q);

  // The dual idempotent Q' = I - Q* carries J3 and, when rank(Q) > n - rank(Q),
  // the dualized J2; ‖P' - Q'‖_F = ‖(I - P') - Q‖_F maps its paths back.
  std::optional<Idempotent> dual;
  std::optional<BlockForm> dual_bf;
  auto ensure_dual = [&] {
    if (!dual) {
      dual = validate_idempotent(ComplexMatrix(Eigen::MatrixXcd(id - qm.adjoint())));
      dual_bf = block_decompose(*dual);
    }
  };

  if (alpha <= lambda1) {
    // J1: t -> m(Q_t) runs from distance lambda1 (t=0, m = P_R(Q)) down to
    // min_Q (t=1, m = m(Q)).
    PathEval eval = [&](double t) {
      Projection p = matched_projection_block(BlockForm{bf.u, scaled_block(bf, t), bf.r});
      const double d = (p.matrix().eigen() - qm).norm();
      return Candidate{std::move(p), d};
    };
    Candidate at0 = eval(0.0);
    Candidate at1{m_q, min_q};
    double t = 0.0;
    Candidate hit = bisect(eval, alpha, tol, std::move(at0), std::move(at1), &t);
    return make_point(Segment::J1, 0, t, std::move(hit.projection), qm);
  }

  if (alpha <= lambda2) {
    const bool dualized = r > static_cast<int>(n) - r;
    const Idempotent* target = &q;
    if (dualized) {
      ensure_dual();
      target = &*dual;
    }
    const int rr = target->rank();
    const int slots = static_cast<int>(n) - 2 * rr;
    // f_i spans [sqrt(lambda1²+i), sqrt(lambda1²+2r+i)]; consecutive intervals
    // overlap by 2r - 1 ≥ 1, so flooring alpha² - lambda1² picks a covering
    // one. The 1e-9 nudge keeps the bracket valid when the difference sits
    // right on an integer.
    int i = static_cast<int>(std::floor(alpha * alpha - lambda1 * lambda1 - 1e-9));
    i = std::clamp(i, 0, slots);
    PathEval eval = [&](double t) {
      Projection p = j2_path(*target, i, t);
      if (dualized) {
        Eigen::MatrixXcd mapped = id - p.matrix().eigen();
        p = validate_projection(ComplexMatrix(std::move(mapped)));
      }
      const double d = (p.matrix().eigen() - qm).norm();
      return Candidate{std::move(p), d};
    };
    Candidate at0 = eval(0.0);
    Candidate at1 = eval(1.0);
    double t = 0.0;
    Candidate hit = bisect(eval, alpha, tol, std::move(at0), std::move(at1), &t);
    return make_point(Segment::J2, i, t, std::move(hit.projection), qm);
  }

  // J3: t -> m(Q'_t) runs from I - P_R(Q) (distance lambda2) to I - m(Q)
  // (distance max_Q).
  ensure_dual();
  PathEval eval = [&](double t) {
    Projection p =
        matched_projection_block(BlockForm{dual_bf->u, scaled_block(*dual_bf, t), dual_bf->r});
    const double d = (p.matrix().eigen() - qm).norm();
    return Candidate{std::move(p), d};
  };
  Candidate at0 = eval(0.0);
  Candidate at1 = eval(1.0);
  double t = 0.0;
  Candidate hit = bisect(eval, alpha, tol, std::move(at0), std::move(at1), &t);
  return make_point(Segment::J3, 0, t, std::move(hit.projection), qm);
}

std::pair<double, double> distance_range(const Idempotent& q) {
  const Eigen::Index n = q.dim();
  Projection m_q = matched_projection(q);
  const double max_q =
      (Eigen::MatrixXcd::Identity(n, n) - m_q.matrix().eigen() - q.matrix().eigen()).norm();
  return {matched_distance(q), max_q};
}

}  // namespace projdist
