// Copyright 2026 The trisynth authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "trisynth/errors.hpp"

// Small dense matrix kernels for n <= 8: Givens factorization, cyclic-Jacobi
// eigen/SVD, cosine-sine decomposition, skew exponential, tensor-factor
// peeling. Everything is a pure function over value types.

namespace trisynth {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Default tolerance for orthogonality / membership checks.
inline constexpr double kMembershipTol = 1e-10;

// Delta_J: diagonal matrix with -1 at the (1-based) positions in `minus`.
struct SignDiagonal {
  int n;
  std::vector<int> minus;

  RealMatrix matrix() const;
};

// exp(theta f_ji): rotation by theta in the (i, j) coordinate plane,
// identity elsewhere. Indices are 1-based with i < j.
struct GivensFactor {
  int i;
  int j;
  double theta;
};

RealMatrix givens_matrix(int n, const GivensFactor &g);
RealMatrix givens_product(int n, const std::vector<GivensFactor> &factors);

bool is_special_orthogonal(const RealMatrix &V, double tol = kMembershipTol);

// Factor V in SO(n) as an ordered product of plane rotations, eliminating
// below-diagonal entries column-major (row index descending within each
// column). A trailing diag(+-1) residue with det +1 is absorbed as pi-angle
// rotations pairing the -1 positions. At most n(n-1)/2 + (n-1) factors.
// Throws NotSpecialOrthogonal.
std::vector<GivensFactor> givens_factorize(const RealMatrix &V,
                                           double tol = kMembershipTol);

// Block factors of the cosine-sine decomposition V = k1 * A(angles) * k2.
// k1, k2 are block diagonal in SO(p) (+) SO(n-p) with each block of
// determinant +1; A(angles) is cs_torus(n, p, angles).
struct CSFactors {
  int p;
  RealMatrix k1;
  RealMatrix k2;
  RealVector angles;
};

// The torus matrix: cos(angles) on the diagonals of [1..p] and
// [n-p+1..n], -sin / +sin in the off corners, identity in the middle.
RealMatrix cs_torus(int n, int p, const RealVector &angles);

// Cosine-sine decomposition of V in SO(n) for 0 < p <= n/2, built from an
// SVD of the upper-left p x p corner plus orthonormal completion, with the
// block determinants repaired by sign moves. Throws NotSpecialOrthogonal.
CSFactors cs_decompose(const RealMatrix &V, int p, double tol = kMembershipTol);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
// values are sorted descending; vectors' columns are the eigenvectors:
// vectors * diag(values) * vectors^T = S. Throws NotSymmetric.
struct SymEigen {
  RealVector values;
  RealMatrix vectors;
};
SymEigen sym_eigen(const RealMatrix &S, double tol = kMembershipTol);

// Singular value decomposition by one-sided Jacobi: A = U * diag(sigma) * V^T
// with sigma sorted descending, sigma >= 0.
struct Svd {
  RealMatrix u;
  RealVector sigma;
  RealMatrix v;
};
Svd jacobi_svd(const RealMatrix &A);

// exp(X) for skew-symmetric X via scaling and squaring of the Taylor series.
// Throws NotSkewSymmetric.
RealMatrix expm_skew(const RealMatrix &X, double tol = kMembershipTol);

// Peel U = A (x) B into (A, B) where A is m x m and B is n x n, normalised
// so that det(B) = 1 with the residual unit phase pushed into A.
// Throws NotTensorProduct if the best rank-1 fit of the rearranged matrix
// leaves a residual above tol.
std::pair<ComplexMatrix, ComplexMatrix> kron_factor(const ComplexMatrix &U,
                                                    int m, int n,
                                                    double tol = 1e-8);

// Deterministic Haar-ish sample of SO(n), reproducible per seed across
// platforms (own gaussian + Gram-Schmidt; no std distributions).
RealMatrix random_special_orthogonal(int n, std::uint64_t seed);

// min(|A - B|_F, |A + B|_F); throws DimensionMismatch.
double projective_distance(const RealMatrix &A, const RealMatrix &B);

}  // namespace trisynth
