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

#include "trisynth/matlib.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trisynth {

RealMatrix SignDiagonal::matrix() const {
  RealMatrix m = RealMatrix::Identity(n, n);
  for (int pos : minus) m(pos - 1, pos - 1) = -1.0;
  return m;
}

RealMatrix givens_matrix(int n, const GivensFactor &g) {
  RealMatrix m = RealMatrix::Identity(n, n);
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  m(g.i - 1, g.i - 1) = c;
  m(g.j - 1, g.j - 1) = c;
  m(g.i - 1, g.j - 1) = -s;
  m(g.j - 1, g.i - 1) = s;
  return m;
}

RealMatrix givens_product(int n, const std::vector<GivensFactor> &factors) {
  RealMatrix m = RealMatrix::Identity(n, n);
  for (const auto &g : factors) {
    // right-multiplication touches only columns i-1 and j-1
    const double c = std::cos(g.theta), s = std::sin(g.theta);
    Eigen::VectorXd ci = m.col(g.i - 1), cj = m.col(g.j - 1);
    m.col(g.i - 1) = c * ci + s * cj;
    m.col(g.j - 1) = -s * ci + c * cj;
  }
  return m;
}

bool is_special_orthogonal(const RealMatrix &V, double tol) {
  if (V.rows() != V.cols()) return false;
  const int n = static_cast<int>(V.rows());
  if ((V.transpose() * V - RealMatrix::Identity(n, n)).norm() > tol) return false;
  return V.determinant() > 0.0;
}

std::vector<GivensFactor> givens_factorize(const RealMatrix &V, double tol) {
  const int n = static_cast<int>(V.rows());
  if (!is_special_orthogonal(V, tol)) {
    throw NotSpecialOrthogonal("givens_factorize: input is not in SO(n)");
  }
  RealMatrix a = V;
  std::vector<GivensFactor> factors;
  for (int i = 1; i < n; ++i) {
    for (int j = n; j > i; --j) {
      const double x = a(i - 1, i - 1);
      const double y = a(j - 1, i - 1);
      if (std::abs(y) < 1e-15) continue;
      const double theta = std::atan2(y, x);
      // apply exp(theta f_ji)^T on the left: rows i-1, j-1 only
      const double c = std::cos(theta), s = std::sin(theta);
      Eigen::RowVectorXd ri = a.row(i - 1), rj = a.row(j - 1);
      a.row(i - 1) = c * ri + s * rj;
      a.row(j - 1) = -s * ri + c * rj;
      factors.push_back({i, j, theta});
    }
  }
  // residual is diag(+-1) with det +1; pair the -1 entries as pi rotations
  std::vector<int> neg;
  for (int k = 0; k < n; ++k) {
    if (a(k, k) < 0.0) neg.push_back(k + 1);
  }
  for (std::size_t k = 0; k + 1 < neg.size(); k += 2) {
    factors.push_back({neg[k], neg[k + 1], M_PI});
  }
  return factors;
}

RealMatrix cs_torus(int n, int p, const RealVector &angles) {
  RealMatrix a = RealMatrix::Identity(n, n);
  for (int i = 0; i < p; ++i) {
    const double c = std::cos(angles(i)), s = std::sin(angles(i));
    const int lo = i, hi = n - p + i;
    a(lo, lo) = c;
    a(hi, hi) = c;
    a(lo, hi) = -s;
    a(hi, lo) = s;
  }
  return a;
}

CSFactors cs_decompose(const RealMatrix &V, int p, double tol) {
  const int n = static_cast<int>(V.rows());
  if (!is_special_orthogonal(V, tol)) {
    throw NotSpecialOrthogonal("cs_decompose: input is not in SO(n)");
  }
  const int q = n - p;
  RealMatrix v11 = V.topLeftCorner(p, p);
  RealMatrix v21 = V.bottomLeftCorner(q, p);

  Svd svd = jacobi_svd(v11);
  RealMatrix u1 = svd.u;
  RealMatrix w1 = svd.v;
  RealVector c = svd.sigma.cwiseMin(1.0).cwiseMax(-1.0);
  // det fixes on u1/w1 push a sign into the last cos entry
  if (u1.determinant() < 0) {
    u1.col(p - 1) *= -1.0;
    c(p - 1) *= -1.0;
  }
  if (w1.determinant() < 0) {
    w1.col(p - 1) *= -1.0;
    c(p - 1) *= -1.0;
  }

  // columns of v21 * w1 are sin(theta_i) times the trailing columns of k1's
  // lower block; complete the rest orthonormally
  RealMatrix x = v21 * w1;
  RealVector s = RealVector::Zero(p);
  RealMatrix k1q = RealMatrix::Zero(q, q);
  std::vector<bool> have(q, false);
  for (int i = 0; i < p; ++i) {
    const double nrm = x.col(i).norm();
    s(i) = nrm;
    if (nrm > 1e-8) {
      k1q.col(q - p + i) = x.col(i) / nrm;
      have[q - p + i] = true;
    }
  }
  int probe = 0;
  for (int col = 0; col < q; ++col) {
    if (have[col]) continue;
    while (true) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(q);
      v(probe % q) = 1.0;
      ++probe;
      for (int k = 0; k < q; ++k) {
        if (have[k]) v -= k1q.col(k).dot(v) * k1q.col(k);
      }
      const double nv = v.norm();
      if (nv > 1e-6) {
        k1q.col(col) = v / nv;
        have[col] = true;
        break;
      }
    }
  }
  // re-orthonormalise the completed columns against accumulated error
  if (k1q.determinant() < 0) {
    bool flipped = false;
    for (int col = 0; col < q - p && !flipped; ++col) {
      k1q.col(col) *= -1.0;
      flipped = true;
    }
    if (!flipped) {
      // no free column (p == q with no degenerate sigma): flip a sin sign
      k1q.col(q - p) *= -1.0;
      s(0) *= -1.0;
    }
  }

  RealVector theta(p);
  for (int i = 0; i < p; ++i) theta(i) = std::atan2(s(i), c(i));

  RealMatrix k1 = RealMatrix::Identity(n, n);
  k1.topLeftCorner(p, p) = u1;
  k1.bottomRightCorner(q, q) = k1q;
  RealMatrix k2 = cs_torus(n, p, theta).transpose() * k1.transpose() * V;
  if (k2.topLeftCorner(p, p).determinant() < 0) {
    theta(p - 1) += M_PI;
    k2 = cs_torus(n, p, theta).transpose() * k1.transpose() * V;
  }
  const double off = k2.topRightCorner(p, q).norm() + k2.bottomLeftCorner(q, p).norm();
  if (off > 1e-7) {
    throw NotSpecialOrthogonal("cs_decompose: factor failed block structure check");
  }
  // clean the numerically-zero off blocks
  k2.topRightCorner(p, q).setZero();
  k2.bottomLeftCorner(q, p).setZero();
  return CSFactors{p, k1, k2, theta};
}

SymEigen sym_eigen(const RealMatrix &S, double tol) {
  const int n = static_cast<int>(S.rows());
  if ((S - S.transpose()).norm() > tol) {
    throw NotSymmetric("sym_eigen: input is not symmetric");
  }
  RealMatrix a = 0.5 * (S + S.transpose());
  RealMatrix qmat = RealMatrix::Identity(n, n);
  const double scale = std::max(1.0, a.norm());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) < 1e-14 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double phi = 0.5 * std::atan2(2.0 * a(p, q), a(q, q) - a(p, p));
        const double c = std::cos(phi), s = std::sin(phi);
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = qmat(k, p), qkq = qmat(k, q);
          qmat(k, p) = c * qkp - s * qkq;
          qmat(k, q) = s * qkp + c * qkq;
        }
      }
    }
  }
  RealVector vals(n);
  for (int k = 0; k < n; ++k) vals(k) = a(k, k);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return vals(x) > vals(y); });
  RealVector sorted(n);
  RealMatrix vecs(n, n);
  for (int k = 0; k < n; ++k) {
    sorted(k) = vals(order[k]);
    vecs.col(k) = qmat.col(order[k]);
  }
  return SymEigen{sorted, vecs};
}

Svd jacobi_svd(const RealMatrix &A) {
  const int n = static_cast<int>(A.rows());
  RealMatrix u = A;
  RealMatrix v = RealMatrix::Identity(n, n);
  const double scale = std::max(1.0, A.norm());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = u.col(p).dot(u.col(q));
        off += apq * apq;
        const double app = u.col(p).squaredNorm();
        const double aqq = u.col(q).squaredNorm();
        if (std::abs(apq) < 1e-300) continue;
        const double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
        const double c = std::cos(phi), s = std::sin(phi);
        Eigen::VectorXd up = u.col(p), uq = u.col(q);
        u.col(p) = c * up - s * uq;
        u.col(q) = s * up + c * uq;
        Eigen::VectorXd vp = v.col(p), vq = v.col(q);
        v.col(p) = c * vp - s * vq;
        v.col(q) = s * vp + c * vq;
      }
    }
    if (std::sqrt(off) < 1e-14 * scale * scale) break;
  }
  RealVector sigma(n);
  for (int k = 0; k < n; ++k) sigma(k) = u.col(k).norm();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return sigma(x) > sigma(y); });
  RealMatrix us(n, n), vs(n, n);
  RealVector ss(n);
  for (int k = 0; k < n; ++k) {
    ss(k) = sigma(order[k]);
    vs.col(k) = v.col(order[k]);
    if (ss(k) > 1e-12) {
      us.col(k) = u.col(order[k]) / ss(k);
    } else {
      us.col(k).setZero();
    }
  }
  // complete zero-sigma columns of U orthonormally
  int probe = 0;
  for (int k = 0; k < n; ++k) {
    if (us.col(k).norm() > 0.5) continue;
    while (true) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
      w(probe % n) = 1.0;
      ++probe;
      for (int j = 0; j < n; ++j) {
        if (j != k && us.col(j).norm() > 0.5) w -= us.col(j).dot(w) * us.col(j);
      }
      if (w.norm() > 1e-6) {
        us.col(k) = w / w.norm();
        break;
      }
    }
  }
  return Svd{us, ss, vs};
}

RealMatrix expm_skew(const RealMatrix &X, double tol) {
  const int n = static_cast<int>(X.rows());
  if ((X + X.transpose()).norm() > tol) {
    throw NotSkewSymmetric("expm_skew: input is not skew-symmetric");
  }
  int squarings = 0;
  RealMatrix a = 0.5 * (X - X.transpose());
  double nrm = a.norm();
  while (nrm > 0.25) {
    a *= 0.5;
    nrm *= 0.5;
    ++squarings;
  }
  RealMatrix result = RealMatrix::Identity(n, n);
  RealMatrix term = RealMatrix::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.norm() < 1e-17) break;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

std::pair<ComplexMatrix, ComplexMatrix> kron_factor(const ComplexMatrix &U,
                                                    int m, int n, double tol) {
  if (U.rows() != m * n || U.cols() != m * n) {
    throw DimensionMismatch("kron_factor: size is not m*n");
  }
  // rearrange so that U = A (x) B becomes the rank-1 matrix vec(A) vec(B)^T
  ComplexMatrix r(m * m, n * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      ComplexMatrix blk = U.block(i * n, j * n, n, n);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) r(i * m + j, k * n + l) = blk(k, l);
      }
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto &sv = svd.singularValues();
  if (sv(0) < 1e-12 || (sv.size() > 1 && sv(1) > tol * sv(0) * 10)) {
    throw NotTensorProduct("kron_factor: rank-1 residual too large");
  }
  ComplexMatrix a(m, m), b(n, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = svd.matrixU()(i * m + j, 0) * sv(0);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) b(k, l) = std::conj(svd.matrixV()(k * n + l, 0));
  }
  // normalise: det(b) = 1, residual phase carried by the left factor
  Complex db = b.determinant();
  if (std::abs(db) < 1e-12) {
    throw NotTensorProduct("kron_factor: singular right factor");
  }
  Complex phase = std::pow(db, -1.0 / n);
  b *= phase;
  // recompute a against the fixed b
  const Complex den = (b * b.adjoint()).trace();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      a(i, j) = (U.block(i * n, j * n, n, n) * b.adjoint()).trace() / den;
    }
  }
  ComplexMatrix re(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) re.block(i * n, j * n, n, n) = a(i, j) * b;
  }
  if ((re - U).norm() > tol * 100) {
    throw NotTensorProduct("kron_factor: reassembly residual too large");
  }
  return {a, b};
}

namespace {

// splitmix-style gaussians: reproducible across platforms, unlike
// std::normal_distribution
struct Gaussians {
  std::uint64_t state;
  explicit Gaussians(std::uint64_t seed) : state(seed) {}
  double uniform() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return (static_cast<double>(z >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

}  // namespace

RealMatrix random_special_orthogonal(int n, std::uint64_t seed) {
  Gaussians rng(seed * 0x2545F4914F6CDD1DULL + 0x9E3779B97F4A7C15ULL);
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  }
  // modified Gram-Schmidt, twice for orthogonality at 1e-15
  RealMatrix q = a;
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
      const double nrm = q.col(j).norm();
      if (nrm < 1e-8) {
        // essentially-zero column: restart with the next stream
        return random_special_orthogonal(n, seed + 0x1234567ULL);
      }
      q.col(j) /= nrm;
    }
  }
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

double projective_distance(const RealMatrix &A, const RealMatrix &B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw DimensionMismatch("projective_distance: shape mismatch");
  }
  return std::min((A - B).norm(), (A + B).norm());
}

}  // namespace trisynth
