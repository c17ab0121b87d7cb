#pragma once

#include "ppursuit/matrix.hpp"

namespace ppursuit::linalg {

// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted in
// descending order; eigenvectors are the matching *columns* of `eigenvectors`,
// each canonicalized so its largest-magnitude entry is positive (ties broken
// by lowest index).
struct SymEigen {
  Vector eigenvalues;
  Matrix eigenvectors;
};

Vector column_means(const Matrix& x);

// X minus its column means.
Matrix centered(const Matrix& x);

// Sample covariance with the n-1 denominator. Requires n >= 2.
Matrix covariance(const Matrix& x);

// Requires a square, symmetric (within 1e-10 relative) matrix.
SymEigen sym_eigen(const Matrix& s);

// Eigenvalues only (ascending), skipping eigenvector accumulation. Used where
// only the spectrum is needed; noticeably faster for large matrices.
Vector sym_eigenvalues_ascending(const Matrix& s);

// Per-column (x - mean) / sd with the n-1 denominator. Errors if any column
// has zero variance.
Matrix standardize(const Matrix& x);

struct WhitenResult {
  Matrix data;       // centered X times transform
  Matrix transform;  // symmetric inverse square root of cov(X)
};

// Whitens X so that cov(result.data) is the identity. Errors when the
// covariance condition number exceeds 1e12 (directions would blow up).
WhitenResult whiten(const Matrix& x);

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
Matrix cholesky(const Matrix& s);

// Solves (L L^T) x = b given the factor from cholesky().
Vector cholesky_solve(const Matrix& l, const Vector& b);

}  // namespace ppursuit::linalg
