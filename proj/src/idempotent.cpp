#include "projdist/idempotent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "projdist/linalg.hpp"

namespace projdist {

namespace {

std::string format_residual(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

// Rotates each column so its largest-magnitude entry is real positive.
// Keeps decompositions deterministic for test fixtures.
void canonicalize_phases(Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best > 0.0) m.col(j) *= std::conj(m(imax, j)) / best;
  }
}

Eigen::MatrixXcd thin_orthonormal(const Eigen::MatrixXcd& g) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
}

}  // namespace

Projection Projection::complement() const {
  Projection out(ComplexMatrix(Eigen::MatrixXcd::Identity(dim(), dim()) - p_.eigen()),
                 static_cast<int>(dim()) - r_);
  return out;
}

Idempotent validate_idempotent(const ComplexMatrix& m) {
  const double nf = frobenius_norm(m);
  return validate_idempotent(m, 1e-8 * (1.0 + nf * nf));
}

Idempotent validate_idempotent(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) {
    throw ValidationError("validate_idempotent: non-square input " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
  }
  const double residual = frobenius_norm(ComplexMatrix(m.eigen() * m.eigen() - m.eigen()));
  if (!(residual <= tol)) {
    throw ValidationError("validate_idempotent: idempotency residual " +
                          format_residual(residual) + " exceeds tolerance " +
                          format_residual(tol));
  }

  // Rank comes out of the SVD; the trace must independently agree, and no
  // nonzero singular value may dip below 1 (both forced by Q^2 = Q). The
  // spectrum of anything passing the residual gate is bimodal, either dust or
  // at least 1, so the count splits at the absolute midpoint 1/2; a cutoff
  // relative to sigma_max would misread a roundoff-sized multiple of the zero
  // idempotent as full rank.
  SvdResult dec = svd(m);
  const double sigma_max = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
  const double spur_allowance = std::min(0.5, 1e-6 * (1.0 + sigma_max));
  int r = 0;
  for (double s : dec.singular_values) {
    if (s > 0.5) {
      ++r;
      if (s < 1.0 - 1e-8) {
        throw ValidationError("validate_idempotent: nonzero singular value " +
                              format_residual(s) + " below 1 (not an idempotent structure)");
      }
    } else if (s > spur_allowance) {
      throw ValidationError("validate_idempotent: spurious singular value " +
                            format_residual(s) + " between 0 and 1 (not an idempotent structure)");
    }
  }
  const Complex tr = trace(m);
  const int r_trace = static_cast<int>(std::lround(tr.real()));
  if (std::abs(tr - Complex(static_cast<double>(r_trace), 0.0)) > 1e-6) {
    throw ValidationError("validate_idempotent: trace " + format_residual(std::abs(tr)) +
                          " not within 1e-6 of an integer");
  }
  if (r_trace != r) {
    throw ValidationError("validate_idempotent: SVD rank " + std::to_string(r) +
                          " disagrees with trace rank " + std::to_string(r_trace));
  }
  return Idempotent(m, r);
}

Projection validate_projection(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw ValidationError("validate_projection: non-square input " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
  }
  const double herm = frobenius_norm(ComplexMatrix(m.eigen() - m.eigen().adjoint()));
  if (herm > 1e-9 * (1.0 + frobenius_norm(m))) {
    throw ValidationError("validate_projection: Hermitian residual " + format_residual(herm));
  }
  const double idem = frobenius_norm(ComplexMatrix(m.eigen() * m.eigen() - m.eigen()));
  if (idem > 1e-8) {
    throw ValidationError("validate_projection: idempotency residual " + format_residual(idem));
  }
  HermitianEigen dec = hermitian_eigen(m);
  int r = 0;
  for (double lambda : dec.values) {
    const double d = std::min(std::abs(lambda), std::abs(lambda - 1.0));
    if (d > 1e-7) {
      throw ValidationError("validate_projection: eigenvalue " + format_residual(lambda) +
                            " not within 1e-7 of {0, 1}");
    }
    if (lambda > 0.5) ++r;
  }
  return Projection(m, r);
}

ComplexMatrix column_space_projection(const ComplexMatrix& m) {
  ComplexMatrix p = m * pinv(m);
  return ComplexMatrix(0.5 * (p.eigen() + p.eigen().adjoint()));
}

Projection range_projection(const Idempotent& q) {
  Projection p = validate_projection(column_space_projection(q.matrix()));
  const double residual =
      frobenius_norm(ComplexMatrix(p.matrix().eigen() * q.matrix().eigen() - q.matrix().eigen()));
  if (residual > 1e-8 * (1.0 + frobenius_norm(q.matrix())) || p.rank() != q.rank()) {
    throw NumericError("range_projection: inconsistent output, P*Q residual " +
                       format_residual(residual) + ", rank " + std::to_string(p.rank()) +
                       " vs " + std::to_string(q.rank()));
  }
  return p;
}

BlockForm block_decompose(const Idempotent& q) {
  const Eigen::Index n = q.dim();
  const int r = q.rank();
  if (r == 0 || r == static_cast<int>(n)) {
    return BlockForm{ComplexMatrix::identity(n), ComplexMatrix(r, n - r), r};
  }

  // Orthonormal basis of R(Q) from the SVD, completed to a unitary by an
  // eigenbasis of the complementary projector. Columns are phase-fixed so the
  // decomposition is reproducible.
  SvdResult dec = svd(q.matrix());
  Eigen::MatrixXcd v1 = dec.u.eigen().leftCols(r);
  canonicalize_phases(v1);
  Eigen::MatrixXcd complement =
      Eigen::MatrixXcd::Identity(n, n) - v1 * v1.adjoint();
  HermitianEigen comp = hermitian_eigen(ComplexMatrix(std::move(complement)));
  Eigen::MatrixXcd v2 = comp.vectors.eigen().rightCols(n - r);  // eigenvalues ascending
  canonicalize_phases(v2);

  Eigen::MatrixXcd basis(n, n);
  basis.leftCols(r) = v1;
  basis.rightCols(n - r) = v2;
  Eigen::MatrixXcd u = basis.adjoint();

  const double unitary_residual =
      (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (unitary_residual > 1e-9) {
    throw NumericError("block_decompose: completed basis not unitary, residual " +
                       format_residual(unitary_residual));
  }

  Eigen::MatrixXcd hat = u * q.matrix().eigen() * u.adjoint();
  const double lower_left = hat.block(r, 0, n - r, r).norm();
  const double lower_right = hat.block(r, r, n - r, n - r).norm();
  if (lower_left > 1e-8 || lower_right > 1e-8) {
    throw NumericError("block_decompose: nonzero lower blocks, residuals " +
                       format_residual(lower_left) + " / " + format_residual(lower_right));
  }
  ComplexMatrix a(hat.block(0, r, r, n - r).eval());

  Eigen::MatrixXcd recomposed = Eigen::MatrixXcd::Zero(n, n);
  recomposed.topLeftCorner(r, r) = Eigen::MatrixXcd::Identity(r, r);
  recomposed.topRightCorner(r, n - r) = a.eigen();
  recomposed = u.adjoint() * recomposed * u;
  const double recomposition = (recomposed - q.matrix().eigen()).norm();
  if (recomposition > 1e-8) {
    throw NumericError("block_decompose: recomposition residual " +
                       format_residual(recomposition));
  }
  return BlockForm{ComplexMatrix(std::move(u)), std::move(a), r};
}

Idempotent block_compose(const BlockForm& bf) {
  const Eigen::Index n = bf.dim();
  const int r = bf.r;
  if (!bf.u.is_square() || r < 0 || r > static_cast<int>(n) || bf.a.rows() != r ||
      bf.a.cols() != n - r) {
    throw ValidationError("block_compose: inconsistent shapes (n=" + std::to_string(n) +
                          ", r=" + std::to_string(r) + ", A " + std::to_string(bf.a.rows()) +
                          "x" + std::to_string(bf.a.cols()) + ")");
  }
  const double unitary_residual =
      (bf.u.eigen() * bf.u.eigen().adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (unitary_residual > 1e-9) {
    throw ValidationError("block_compose: U not unitary, residual " +
                          format_residual(unitary_residual));
  }
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  block.topLeftCorner(r, r) = Eigen::MatrixXcd::Identity(r, r);
  block.topRightCorner(r, n - r) = bf.a.eigen();
  Eigen::MatrixXcd m = bf.u.eigen().adjoint() * block * bf.u.eigen();
  Idempotent q = validate_idempotent(ComplexMatrix(std::move(m)));
  if (q.rank() != r) {
    throw NumericError("block_compose: computed rank " + std::to_string(q.rank()) +
                       " differs from block rank " + std::to_string(r));
  }
  return q;
}

Projection projection_from_params(const ComplexMatrix& u, const ProjectionParams& params) {
  if (!params.c.is_square() || !params.q0.is_square()) {
    throw ValidationError("projection_from_params: C and Q0 must be square");
  }
  const Eigen::Index r = params.c.rows();
  const Eigen::Index nr = params.u0.rows();
  const Eigen::Index n = r + nr;
  if (params.u0.cols() != r || params.q0.rows() != nr || u.rows() != n || !u.is_square()) {
    throw ValidationError("projection_from_params: inconsistent shapes");
  }
  const double unitary_residual =
      (u.eigen() * u.eigen().adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (unitary_residual > 1e-9) {
    throw ValidationError("projection_from_params: U not unitary, residual " +
                          format_residual(unitary_residual));
  }

  HermitianEigen ce = hermitian_eigen(params.c);
  const double c_herm =
      frobenius_norm(ComplexMatrix(params.c.eigen() - params.c.eigen().adjoint()));
  if (c_herm > 1e-9 * (1.0 + frobenius_norm(params.c))) {
    throw ValidationError("projection_from_params: C not Hermitian, residual " +
                          format_residual(c_herm));
  }
  for (double lambda : ce.values) {
    if (lambda < -1e-9 || lambda > 1.0 + 1e-9) {
      throw ValidationError("projection_from_params: C not a positive contraction, eigenvalue " +
                            format_residual(lambda));
    }
  }

  Eigen::MatrixXcd gram = params.u0.eigen().adjoint() * params.u0.eigen();
  const double isometry_residual = (gram * gram - gram).norm();
  if (isometry_residual > 1e-8) {
    throw ValidationError("projection_from_params: U0^* U0 not a projection, residual " +
                          format_residual(isometry_residual));
  }
  // Support of C - C^2 read off the spectrum of C. The spectrum of C - C^2
  // lives in [0, 1/4], so an absolute threshold separates genuine interior
  // eigenvalues from the dust left when an eigenvalue is pinned at 0 or 1;
  // a cutoff relative to sigma_max would promote that dust to rank.
  Eigen::MatrixXcd support = Eigen::MatrixXcd::Zero(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double lambda = std::clamp(ce.values[static_cast<std::size_t>(i)], 0.0, 1.0);
    if (lambda * (1.0 - lambda) > 1e-10) {
      support += ce.vectors.eigen().col(i) * ce.vectors.eigen().col(i).adjoint();
    }
  }
  const double range_residual = (gram - support).norm();
  if (range_residual > 1e-8) {
    throw ValidationError("projection_from_params: range(U0^*) != range(C - C^2), residual " +
                          format_residual(range_residual));
  }
  const double annihilation = (params.u0.eigen().adjoint() * params.q0.eigen()).norm();
  if (annihilation > 1e-9) {
    throw ValidationError("projection_from_params: U0^* Q0 != 0, residual " +
                          format_residual(annihilation));
  }
  try {
    (void)validate_projection(params.q0);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("projection_from_params: Q0 invalid: ") + e.what());
  }

  // Rebuild C and D = C^(1/2)(I-C)^(1/2) from one eigendecomposition, with
  // eigenvalue dust clamped into [0, 1] so the square roots stay real.
  Eigen::VectorXd cvals(r), dvals(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double lambda = std::clamp(ce.values[static_cast<std::size_t>(i)], 0.0, 1.0);
    cvals(i) = lambda;
    dvals(i) = std::sqrt(lambda * (1.0 - lambda));
  }
  const Eigen::MatrixXcd& w = ce.vectors.eigen();
  Eigen::MatrixXcd c_clean = w * cvals.asDiagonal() * w.adjoint();
  Eigen::MatrixXcd d = w * dvals.asDiagonal() * w.adjoint();

  Eigen::MatrixXcd block(n, n);
  block.topLeftCorner(r, r) = c_clean;
  block.topRightCorner(r, nr) = d * params.u0.eigen().adjoint();
  block.bottomLeftCorner(nr, r) = params.u0.eigen() * d;
  block.bottomRightCorner(nr, nr) =
      params.u0.eigen() * (Eigen::MatrixXcd::Identity(r, r) - c_clean) *
          params.u0.eigen().adjoint() +
      params.q0.eigen();
  Eigen::MatrixXcd p = u.eigen().adjoint() * block * u.eigen();
  p = 0.5 * (p + p.adjoint().eval());
  try {
    return validate_projection(ComplexMatrix(std::move(p)));
  } catch (const ValidationError& e) {
    throw NumericError(std::string("projection_from_params: output failed validation: ") +
                       e.what());
  }
}

namespace detail {

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, double scale,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, scale / std::sqrt(2.0));
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return ComplexMatrix(std::move(g));
}

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  ComplexMatrix g = random_gaussian(n, n, 1.0, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g.eigen());
  Eigen::MatrixXcd u = qr.householderQ();
  Eigen::VectorXcd diag = qr.matrixQR().diagonal();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(diag(i));
    u.col(i) *= a > 0.0 ? diag(i) / a : Complex(1.0, 0.0);
  }
  return ComplexMatrix(std::move(u));
}

Idempotent random_idempotent(Eigen::Index n, int r, double scale, std::mt19937_64& rng) {
  if (r < 0 || r > static_cast<int>(n)) {
    throw ValidationError("random_idempotent: rank " + std::to_string(r) +
                          " out of range for n=" + std::to_string(n));
  }
  if (!(scale > 0.0)) throw ValidationError("random_idempotent: scale must be positive");
  ComplexMatrix u = random_unitary(n, rng);
  ComplexMatrix a = random_gaussian(r, n - r, scale, rng);
  return block_compose(BlockForm{std::move(u), std::move(a), r});
}

Projection random_projection(Eigen::Index n, int r, std::mt19937_64& rng) {
  if (r < 0 || r > static_cast<int>(n)) {
    throw ValidationError("random_projection: rank " + std::to_string(r) +
                          " out of range for n=" + std::to_string(n));
  }
  if (r == 0) return validate_projection(ComplexMatrix(n, n));
  ComplexMatrix g = random_gaussian(n, r, 1.0, rng);
  Eigen::MatrixXcd v = thin_orthonormal(g.eigen());
  Eigen::MatrixXcd p = v * v.adjoint();
  p = 0.5 * (p + p.adjoint().eval());
  return validate_projection(ComplexMatrix(std::move(p)));
}

Projection random_covering_projection(const Idempotent& q, int extra_rank, std::mt19937_64& rng) {
  const Eigen::Index n = q.dim();
  const int target = q.rank() + extra_rank;
  if (extra_rank < 0 || target > static_cast<int>(n)) {
    throw ValidationError("random_covering_projection: rank " + std::to_string(target) +
                          " overflows dimension " + std::to_string(n));
  }
  Eigen::MatrixXcd basis;
  if (q.rank() > 0) {
    basis = svd(q.matrix()).u.eigen().leftCols(q.rank());
  } else {
    basis.resize(n, 0);
  }
  for (int attempt = 0; attempt < 10; ++attempt) {
    Eigen::MatrixXcd m(n, target);
    m.leftCols(q.rank()) = basis;
    if (extra_rank > 0) {
      m.rightCols(extra_rank) = random_gaussian(n, extra_rank, 1.0, rng).eigen();
    }
    ComplexMatrix span(std::move(m));
    if (numerical_rank(span) != target) continue;  // measure-zero rank deficiency: re-draw
    Projection p = validate_projection(column_space_projection(span));
    if (p.rank() != target) continue;
    const double covering_residual = frobenius_norm(
        ComplexMatrix(p.matrix().eigen() * q.matrix().eigen() - q.matrix().eigen()));
    if (covering_residual > 1e-8 * (1.0 + frobenius_norm(q.matrix()))) {
      throw NumericError("random_covering_projection: covering residual " +
                         format_residual(covering_residual));
    }
    return p;
  }
  throw NumericError("random_covering_projection: rank-deficient draws 10 times in a row");
}

ProjectionParams random_projection_params(Eigen::Index n, int r, std::mt19937_64& rng) {
  if (r < 0 || r > static_cast<int>(n)) {
    throw ValidationError("random_projection_params: rank out of range");
  }
  const Eigen::Index nr = n - r;
  const int k_max = static_cast<int>(std::min<Eigen::Index>(r, nr));
  std::uniform_int_distribution<int> pick_k(0, k_max);
  const int k = pick_k(rng);

  // C: k eigenvalues strictly inside (0,1), the rest pinned to {0,1}, so
  // range(C - C^2) has clean rank k.
  std::uniform_real_distribution<double> interior(0.05, 0.95);
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXd cvals(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    cvals(i) = i < k ? interior(rng) : (coin(rng) ? 1.0 : 0.0);
  }
  ComplexMatrix w = r > 0 ? random_unitary(r, rng) : ComplexMatrix(0, 0);
  Eigen::MatrixXcd c = w.eigen() * cvals.asDiagonal() * w.eigen().adjoint();
  c = 0.5 * (c + c.adjoint().eval());

  // U0 = S V_k^* where V_k spans range(C - C^2) and S is a random isometry;
  // this realizes range(U0^*) = range(C - C^2) exactly.
  Eigen::MatrixXcd vk = w.eigen().leftCols(k);
  Eigen::MatrixXcd s(nr, k);
  if (k > 0) s = thin_orthonormal(random_gaussian(nr, k, 1.0, rng).eigen());
  Eigen::MatrixXcd u0 = s * vk.adjoint();

  // Q0 lives in the orthogonal complement of range(S).
  const int m_max = static_cast<int>(nr) - k;
  std::uniform_int_distribution<int> pick_m(0, m_max);
  const int m = pick_m(rng);
  Eigen::MatrixXcd q0 = Eigen::MatrixXcd::Zero(nr, nr);
  if (m > 0) {
    Eigen::MatrixXcd g = random_gaussian(nr, m, 1.0, rng).eigen();
    g -= s * (s.adjoint() * g);
    Eigen::MatrixXcd y = thin_orthonormal(g);
    q0 = y * y.adjoint();
    q0 = 0.5 * (q0 + q0.adjoint().eval());
  }
  return ProjectionParams{ComplexMatrix(std::move(c)), ComplexMatrix(std::move(u0)),
                          ComplexMatrix(std::move(q0))};
}

}  // namespace detail

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, double scale,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_gaussian(rows, cols, scale, rng);
}

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_unitary(n, rng);
}

Idempotent random_idempotent(Eigen::Index n, int r, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_idempotent(n, r, scale, rng);
}

Projection random_projection(Eigen::Index n, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_projection(n, r, rng);
}

Projection random_covering_projection(const Idempotent& q, int extra_rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_covering_projection(q, extra_rank, rng);
}

ProjectionParams random_projection_params(Eigen::Index n, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_projection_params(n, r, rng);
}

}  // namespace projdist
