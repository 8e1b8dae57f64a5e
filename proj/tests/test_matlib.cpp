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

#include <Eigen/SVD>
#include <cmath>

#include "doctest.h"

using namespace trisynth;

TEST_CASE("sign diagonal") {
  SignDiagonal d{5, {2, 3}};
  RealMatrix m = d.matrix();
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 1) == -1.0);
  CHECK(m(2, 2) == -1.0);
  CHECK(m(3, 3) == 1.0);
  CHECK(m(4, 4) == 1.0);
}

TEST_CASE("givens_factorize identity and single plane") {
  CHECK(givens_factorize(RealMatrix::Identity(4, 4)).empty());

  RealMatrix v = givens_matrix(3, GivensFactor{1, 2, 0.7});
  auto facs = givens_factorize(v);
  REQUIRE(facs.size() == 1);
  CHECK(facs[0].i == 1);
  CHECK(facs[0].j == 2);
  CHECK(facs[0].theta == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("givens_factorize reassembly over all sizes") {
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      RealMatrix v = random_special_orthogonal(n, seed * 7 + n);
      auto facs = givens_factorize(v);
      CHECK(facs.size() <= static_cast<std::size_t>(n * (n - 1) / 2 + (n - 1)));
      CHECK((givens_product(n, facs) - v).norm() <= 1e-12);
    }
  }
}

TEST_CASE("givens_factorize rejects non-special-orthogonal input") {
  RealMatrix m = RealMatrix::Identity(3, 3);
  m(0, 0) = -1.0;  // det -1
  CHECK_THROWS_AS(givens_factorize(m), NotSpecialOrthogonal);
  CHECK_THROWS_AS(givens_factorize(2.0 * RealMatrix::Identity(3, 3)),
                  NotSpecialOrthogonal);
}

TEST_CASE("cs_decompose identity") {
  CSFactors f = cs_decompose(RealMatrix::Identity(8, 8), 3);
  CHECK((f.k1 - RealMatrix::Identity(8, 8)).norm() < 1e-12);
  CHECK((f.k2 - RealMatrix::Identity(8, 8)).norm() < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::cos(f.angles(i)) == doctest::Approx(1.0));
}

TEST_CASE("cs torus sparsity pattern n=8 p=3") {
  RealVector th(3);
  th << 0.3, 0.7, 1.1;
  RealMatrix a = cs_torus(8, 3, th);
  // identity rows/cols 4, 5; cos on the diagonals of {1,2,3} and {6,7,8};
  // -sin / +sin in the off blocks
  CHECK(a(3, 3) == 1.0);
  CHECK(a(4, 4) == 1.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(a(i, i) == doctest::Approx(std::cos(th(i))));
    CHECK(a(5 + i, 5 + i) == doctest::Approx(std::cos(th(i))));
    CHECK(a(i, 5 + i) == doctest::Approx(-std::sin(th(i))));
    CHECK(a(5 + i, i) == doctest::Approx(std::sin(th(i))));
  }
  // everything outside the displayed pattern is zero
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      const bool diag = r == c;
      const bool off = (c == r + 5 && r < 3) || (r == c + 5 && c < 3);
      if (!diag && !off) CHECK(a(r, c) == 0.0);
    }
  }
}

TEST_CASE("cs_decompose corner singular values match an independent SVD") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RealMatrix v = random_special_orthogonal(5, seed);
    CSFactors f = cs_decompose(v, 2);
    // oracle: Eigen's SVD of the corner, independent of the Jacobi kernels
    Eigen::JacobiSVD<RealMatrix> svd(v.topLeftCorner(2, 2));
    RealVector expect = svd.singularValues();
    RealVector got(2);
    got << std::abs(std::cos(f.angles(0))), std::abs(std::cos(f.angles(1)));
    std::sort(got.data(), got.data() + 2, std::greater<double>());
    CHECK((got - expect).norm() < 1e-10);
  }
}

TEST_CASE("cs_decompose reassembly, block structure, determinants") {
  for (int n : {4, 5, 6, 7, 8}) {
    for (int p = 1; 2 * p <= n; ++p) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RealMatrix v = random_special_orthogonal(n, seed * 31 + n * 7 + p);
        CSFactors f = cs_decompose(v, p);
        CHECK((f.k1 * cs_torus(n, p, f.angles) * f.k2 - v).norm() <= 1e-10);
        for (const RealMatrix &k : {f.k1, f.k2}) {
          CHECK(k.topRightCorner(p, n - p).norm() < 1e-10);
          CHECK(k.bottomLeftCorner(n - p, p).norm() < 1e-10);
          CHECK(k.topLeftCorner(p, p).determinant() > 0);
          CHECK(k.bottomRightCorner(n - p, n - p).determinant() > 0);
          CHECK((k.transpose() * k - RealMatrix::Identity(n, n)).norm() < 1e-10);
        }
        for (int i = 0; i < p; ++i) {
          const double c = std::cos(f.angles(i)), s = std::sin(f.angles(i));
          CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("cs_decompose degenerate inputs") {
  // block-diagonal input: all sigma at 1
  RealMatrix b = RealMatrix::Identity(8, 8);
  b.topLeftCorner(3, 3) = random_special_orthogonal(3, 5);
  b.bottomRightCorner(5, 5) = random_special_orthogonal(5, 6);
  CSFactors f = cs_decompose(b, 3);
  CHECK((f.k1 * cs_torus(8, 3, f.angles) * f.k2 - b).norm() <= 1e-10);

  // sigma = 0: quarter-turn planes
  RealVector th(3);
  th << M_PI / 2, M_PI / 2, M_PI / 2;
  RealMatrix v = cs_torus(8, 3, th);
  CSFactors g = cs_decompose(v, 3);
  CHECK((g.k1 * cs_torus(8, 3, g.angles) * g.k2 - v).norm() <= 1e-10);
}

TEST_CASE("sym_eigen basics") {
  RealMatrix d(2, 2);
  d << 3, 0, 0, 1;
  SymEigen e = sym_eigen(d);
  CHECK(e.values(0) == doctest::Approx(3.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK((e.vectors.cwiseAbs() - RealMatrix::Identity(2, 2)).norm() < 1e-12);

  RealMatrix x(2, 2);
  x << 0, 1, 1, 0;
  SymEigen ex = sym_eigen(x);
  CHECK(ex.values(0) == doctest::Approx(1.0));
  CHECK(ex.values(1) == doctest::Approx(-1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(ex.vectors(0, 0)) - r) < 1e-12);
  CHECK(std::abs(std::abs(ex.vectors(1, 0)) - r) < 1e-12);
}

TEST_CASE("sym_eigen random reassembly") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RealMatrix a = random_special_orthogonal(8, seed) +
                   random_special_orthogonal(8, seed + 1000);
    RealMatrix s = a + a.transpose();
    SymEigen e = sym_eigen(s);
    CHECK((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - s).norm() <= 1e-11);
    for (int k = 0; k + 1 < 8; ++k) CHECK(e.values(k) >= e.values(k + 1) - 1e-12);
  }
  CHECK_THROWS_AS(sym_eigen(givens_matrix(3, {1, 2, 0.3})), NotSymmetric);
}

TEST_CASE("expm_skew") {
  CHECK((expm_skew(RealMatrix::Zero(4, 4)) - RealMatrix::Identity(4, 4)).norm() == 0.0);

  RealMatrix x = RealMatrix::Zero(3, 3);
  x(1, 0) = 0.9;
  x(0, 1) = -0.9;
  RealMatrix e = expm_skew(x);
  CHECK(e(0, 0) == doctest::Approx(std::cos(0.9)).epsilon(1e-13));
  CHECK(e(1, 0) == doctest::Approx(std::sin(0.9)).epsilon(1e-13));

  // Example 3.7 closed form: for X = theta * tau(f_51), exp(X) equals
  // cos(theta/2) I + 2 sin(theta/2) tau(f_51)
  RealMatrix t51 = RealMatrix::Zero(8, 8);
  const int pos[8][2] = {{1, 7}, {2, 8}, {5, 3}, {4, 6}, {3, 5}, {6, 4}, {7, 1}, {8, 2}};
  const double val[8] = {-0.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 0.5};
  for (int k = 0; k < 8; ++k) t51(pos[k][0] - 1, pos[k][1] - 1) = val[k];
  REQUIRE((t51 + t51.transpose()).norm() == 0.0);
  for (double theta : {0.3, 1.2, 2.9}) {
    RealMatrix lhs = expm_skew(theta * t51);
    RealMatrix rhs = std::cos(theta / 2) * RealMatrix::Identity(8, 8) +
                     2.0 * std::sin(theta / 2) * t51;
    CHECK((lhs - rhs).norm() <= 1e-12);
  }

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RealMatrix a = 5.0 * (random_special_orthogonal(8, seed) -
                          random_special_orthogonal(8, seed + 99));
    RealMatrix sk = 0.5 * (a - a.transpose());
    RealMatrix ex = expm_skew(sk);
    CHECK((ex.transpose() * ex - RealMatrix::Identity(8, 8)).norm() <= 1e-12);
    CHECK(ex.determinant() > 0);
  }
  CHECK_THROWS_AS(expm_skew(RealMatrix::Identity(3, 3)), NotSkewSymmetric);
}

namespace {

ComplexMatrix kron2(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix random_su2(std::uint64_t seed) {
  RealMatrix g = random_special_orthogonal(4, seed);
  Eigen::Vector4d a(g(0, 0), g(1, 0), g(2, 0), g(3, 0));
  a.normalize();
  ComplexMatrix u(2, 2);
  const Complex i{0, 1};
  u << a(0) + i * a(3), a(2) + i * a(1), -a(2) + i * a(1), a(0) - i * a(3);
  return u;
}

}  // namespace

TEST_CASE("kron_factor") {
  auto [a, b] = kron_factor(ComplexMatrix::Identity(4, 4), 2, 2);
  CHECK((kron2(a, b) - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
  CHECK(std::abs(b.determinant() - Complex(1, 0)) < 1e-12);

  ComplexMatrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  auto [px, pz] = kron_factor(kron2(sx, sz), 2, 2);
  CHECK((kron2(px, pz) - kron2(sx, sz)).norm() < 1e-10);
  CHECK(std::abs(pz.determinant() - Complex(1, 0)) < 1e-12);
  // det(sigma_z) = -1, so the det-1 normalisation makes the right factor
  // +-i sigma_z and the compensating phase moves into the left factor
  const double dz = std::min((pz - Complex(0, 1) * sz).norm(),
                             (pz + Complex(0, 1) * sz).norm());
  CHECK(dz < 1e-9);
  const double dx = std::min((px - Complex(0, 1) * sx).norm(),
                             (px + Complex(0, 1) * sx).norm());
  CHECK(dx < 1e-9);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ComplexMatrix u1 = random_su2(seed * 2 + 1), u2 = random_su2(seed * 2 + 2);
    auto [f1, f2] = kron_factor(kron2(u1, u2), 2, 2);
    CHECK((kron2(f1, f2) - kron2(u1, u2)).norm() <= 1e-10);
    const double d = std::min((f2 - u2).norm(), (f2 + u2).norm());
    CHECK(d < 1e-9);
  }

  ComplexMatrix notprod = ComplexMatrix::Identity(4, 4);
  notprod(3, 3) = -1;  // CZ is entangling
  CHECK_THROWS_AS(kron_factor(notprod, 2, 2), NotTensorProduct);
}

TEST_CASE("random_special_orthogonal determinism and membership") {
  RealMatrix a = random_special_orthogonal(8, 1);
  RealMatrix b = random_special_orthogonal(8, 1);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - random_special_orthogonal(8, 2)).norm() > 1e-3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RealMatrix o = random_special_orthogonal(8, seed);
    CHECK((o.transpose() * o - RealMatrix::Identity(8, 8)).norm() <= 1e-12);
    CHECK(o.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("projective_distance") {
  RealMatrix a = random_special_orthogonal(6, 3);
  CHECK(projective_distance(a, a) == 0.0);
  CHECK(projective_distance(a, -a) == 0.0);
  RealMatrix i2 = RealMatrix::Identity(2, 2);
  CHECK(projective_distance(i2, givens_matrix(2, {1, 2, M_PI / 2})) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(projective_distance(i2, RealMatrix::Identity(3, 3)),
                  DimensionMismatch);
}
