#pragma once

#include <functional>
#include <vector>

#include "projdist/matrix.hpp"

namespace projdist {

// Full singular value decomposition m = u * diag(singular_values) * v^*.
// u is rows x rows, v is cols x cols, singular_values descending.
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> singular_values;
  ComplexMatrix v;
};

SvdResult svd(const ComplexMatrix& m);

// Relative rank cutoff shared by pinv, numerical_rank and the idempotent
// validators: singular values <= max(rows, cols) * eps * sigma_max count as zero.
double rank_cutoff(const ComplexMatrix& m, double sigma_max);

// Moore-Penrose inverse via SVD. The one-argument form uses the shared
// rank cutoff; rank_tol is an absolute threshold on singular values.
ComplexMatrix pinv(const ComplexMatrix& m);
ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol);

// Number of singular values above the shared cutoff.
int numerical_rank(const ComplexMatrix& m);

// Hermitian eigendecomposition of (h + h^*)/2, eigenvalues ascending.
struct HermitianEigen {
  ComplexMatrix vectors;       // columns are orthonormal eigenvectors
  std::vector<double> values;  // real, ascending
};

HermitianEigen hermitian_eigen(const ComplexMatrix& h);

// Functional calculus on the symmetrized input: vectors * diag(f(values)) * vectors^*.
// No positivity or conditioning checks; callers pick f accordingly.
ComplexMatrix hermitian_apply(const ComplexMatrix& h, const std::function<double(double)>& f);

// Square root of a positive semidefinite Hermitian matrix. Rejects inputs
// that are not Hermitian within 1e-10*(1+||h||_F) or that have an eigenvalue
// below -1e-10*(1+||h||_F); eigenvalues between that floor and 0 are clipped.
ComplexMatrix sqrtm_psd(const ComplexMatrix& h);

// |q^*| = (q q^*)^(1/2), the absolute value of the conjugate transpose.
ComplexMatrix abs_conjugate(const ComplexMatrix& q);

double frobenius_norm(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);  // square input only

}  // namespace projdist
