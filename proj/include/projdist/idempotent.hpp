#pragma once

#include <cstdint>
#include <random>

#include "projdist/matrix.hpp"

namespace projdist {

// Validated wrapper for a square matrix Q with Q^2 = Q. Idempotents are
// oblique projections: every nonzero singular value is >= 1, and the rank
// equals the trace. Construct through validate_idempotent.
class Idempotent {
 public:
  [[nodiscard]] const ComplexMatrix& matrix() const { return q_; }
  [[nodiscard]] Eigen::Index dim() const { return q_.rows(); }
  [[nodiscard]] int rank() const { return r_; }

 private:
  friend Idempotent validate_idempotent(const ComplexMatrix&, double);
  friend class Projection;
  Idempotent(ComplexMatrix q, int r) : q_(std::move(q)), r_(r) {}

  ComplexMatrix q_;
  int r_;
};

// Validated wrapper for an orthogonal projection P = P^* = P^2.
class Projection {
 public:
  [[nodiscard]] const ComplexMatrix& matrix() const { return p_; }
  [[nodiscard]] Eigen::Index dim() const { return p_.rows(); }
  [[nodiscard]] int rank() const { return r_; }

  // A projection is in particular an idempotent; no re-validation needed
  // (the projection tolerances are the stricter ones).
  [[nodiscard]] Idempotent as_idempotent() const { return Idempotent(p_, r_); }

  // I - P, again a projection, of complementary rank.
  [[nodiscard]] Projection complement() const;

 private:
  friend Projection validate_projection(const ComplexMatrix&);
  Projection(ComplexMatrix p, int r) : p_(std::move(p)), r_(r) {}

  ComplexMatrix p_;
  int r_;
};

// The triple (U, A, r) realizing Q = U^* [[I_r, A], [0, 0]] U with U unitary
// and A of shape r x (n-r). U simultaneously diagonalizes the range
// projection: P_R(Q) = U^* diag(I_r, 0) U.
struct BlockForm {
  ComplexMatrix u;
  ComplexMatrix a;
  int r = 0;

  [[nodiscard]] Eigen::Index dim() const { return u.rows(); }
};

// Parameters (C, U0, Q0) of the general projection form
//   P = U^* [[C, C^(1/2)(I-C)^(1/2) U0^*], [U0 C^(1/2)(I-C)^(1/2), U0 (I-C) U0^* + Q0]] U
// where C is an r x r positive contraction, U0 an (n-r) x r partial isometry
// with range(U0^*) = range(C - C^2), and Q0 an (n-r) x (n-r) projection with
// U0^* Q0 = 0.
struct ProjectionParams {
  ComplexMatrix c;
  ComplexMatrix u0;
  ComplexMatrix q0;
};

// tol defaults to 1e-8 * (1 + ||m||_F^2).
Idempotent validate_idempotent(const ComplexMatrix& m);
Idempotent validate_idempotent(const ComplexMatrix& m, double tol);

// Checks ||P - P^*||_F <= 1e-9 * (1 + ||P||_F), ||P^2 - P||_F <= 1e-8, and
// that every eigenvalue is within 1e-7 of {0, 1}.
Projection validate_projection(const ComplexMatrix& m);

// Orthogonal projection onto the column space of Q, computed as Q * pinv(Q).
// Satisfies P * Q = Q and rank(P) = rank(Q).
Projection range_projection(const Idempotent& q);

// Projection onto the column space of an arbitrary matrix, m * pinv(m).
ComplexMatrix column_space_projection(const ComplexMatrix& m);

BlockForm block_decompose(const Idempotent& q);
Idempotent block_compose(const BlockForm& bf);

Projection projection_from_params(const ComplexMatrix& u, const ProjectionParams& params);

// Generators for the test suites. All are deterministic per seed.
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, double scale,
                              std::uint64_t seed);
ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed);
Idempotent random_idempotent(Eigen::Index n, int r, double scale, std::uint64_t seed);
Projection random_projection(Eigen::Index n, int r, std::uint64_t seed);
Projection random_covering_projection(const Idempotent& q, int extra_rank, std::uint64_t seed);
ProjectionParams random_projection_params(Eigen::Index n, int r, std::uint64_t seed);

// Engine-based variants used where one seed drives a whole sample loop.
namespace detail {
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, double scale,
                              std::mt19937_64& rng);
ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng);
Idempotent random_idempotent(Eigen::Index n, int r, double scale, std::mt19937_64& rng);
Projection random_projection(Eigen::Index n, int r, std::mt19937_64& rng);
Projection random_covering_projection(const Idempotent& q, int extra_rank, std::mt19937_64& rng);
ProjectionParams random_projection_params(Eigen::Index n, int r, std::mt19937_64& rng);
}  // namespace detail

}  // namespace projdist
