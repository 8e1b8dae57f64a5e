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

#include "trisynth/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trisynth {

void Partition::validate() const {
  std::vector<bool> seen(n + 1, false);
  int covered = 0;
  for (const auto &blk : blocks) {
    if (blk.empty()) throw Error("Partition: empty block");
    for (int x : blk) {
      if (x < 1 || x > n || seen[x]) throw Error("Partition: bad cover");
      seen[x] = true;
      ++covered;
    }
  }
  if (covered != n) throw Error("Partition: blocks do not cover [n]");
}

Partition partition_meet(const Partition &a, const Partition &b) {
  if (a.n != b.n) throw GroundSetMismatch("partition_meet: different ground sets");
  a.validate();
  b.validate();
  Partition out{a.n, {}};
  for (const auto &ba : a.blocks) {
    for (const auto &bb : b.blocks) {
      std::vector<int> inter;
      for (int x : ba) {
        if (std::find(bb.begin(), bb.end(), x) != bb.end()) inter.push_back(x);
      }
      if (!inter.empty()) {
        std::sort(inter.begin(), inter.end());
        out.blocks.push_back(inter);
      }
    }
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

BlockMembership block_membership(const RealMatrix &v, const BlockGroupSpec &spec,
                                 bool projective, double tol) {
  if (v.rows() != spec.n || v.cols() != spec.n) {
    throw DimensionMismatch("block_membership: size mismatch");
  }
  spec.pi.validate();
  std::vector<std::vector<bool>> in_block(spec.n, std::vector<bool>(spec.n, false));
  for (const auto &blk : spec.pi.blocks) {
    for (int a : blk) {
      for (int b : blk) in_block[a - 1][b - 1] = true;
    }
  }
  double off2 = 0.0;
  for (int r = 0; r < spec.n; ++r) {
    for (int c = 0; c < spec.n; ++c) {
      if (!in_block[r][c]) off2 += v(r, c) * v(r, c);
    }
  }
  const double residual = std::sqrt(off2);
  if (residual > tol) return {false, residual};
  // block determinant test, with the projective lift -v also allowed
  auto dets_ok = [&](double sign) {
    for (const auto &blk : spec.pi.blocks) {
      const int m = static_cast<int>(blk.size());
      RealMatrix sub(m, m);
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) sub(r, c) = sign * v(blk[r] - 1, blk[c] - 1);
      }
      if (sub.determinant() < 0) return false;
    }
    return true;
  };
  bool ok = dets_ok(1.0);
  if (!ok && projective) ok = dets_ok(-1.0);
  return {ok, residual};
}

bool det_signs_compatible(DetSign a, DetSign b) {
  if (a == DetSign::Undetermined || b == DetSign::Undetermined) return true;
  return a == b;
}

namespace {

DetSign det_sign(double d, double tol = 1e-10) {
  if (std::abs(d) < tol) return DetSign::Undetermined;
  return d > 0 ? DetSign::Plus : DetSign::Minus;
}

DetSign mul(DetSign a, DetSign b) {
  if (a == DetSign::Undetermined || b == DetSign::Undetermined) {
    return DetSign::Undetermined;
  }
  return (a == b) ? DetSign::Plus : DetSign::Minus;
}

}  // namespace

CanonicalParams canonical_params(const RealMatrix &u, int p, bool projective) {
  const int n = static_cast<int>(u.rows());
  if (!is_special_orthogonal(u)) {
    throw NotSpecialOrthogonal("canonical_params: input is not in SO(n)");
  }
  if (p < 1 || 2 * p > n) throw Error("canonical_params: need 0 < p <= n/2");
  Svd svd = jacobi_svd(u.topLeftCorner(p, p));
  RealVector sigma = svd.sigma.cwiseMin(1.0).cwiseMax(0.0);
  CanonicalParams out{p, sigma, std::nullopt, std::nullopt, projective};
  const DetSign d1 = det_sign(u.topLeftCorner(p, p).determinant());
  const DetSign d2 =
      (2 * p == n) ? det_sign(u.topRightCorner(p, p).determinant()) : DetSign::Undetermined;
  if (!projective) {
    out.sign_corner = d1;
    if (2 * p == n) out.sign_anti = d2;
  } else {
    if (2 * p < n) {
      if (p % 2 == 0) out.sign_corner = d1;
    } else if (p % 2 == 0) {
      out.sign_corner = d1;
      out.sign_anti = d2;
    } else {
      out.sign_corner = mul(d1, d2);
    }
  }
  return out;
}

bool params_equal(const CanonicalParams &a, const CanonicalParams &b, double sigma_tol) {
  if (a.p != b.p || a.projective != b.projective) return false;
  if ((a.sigma - b.sigma).lpNorm<Eigen::Infinity>() > sigma_tol) return false;
  if (a.sign_corner.has_value() != b.sign_corner.has_value()) return false;
  if (a.sign_corner && !det_signs_compatible(*a.sign_corner, *b.sign_corner)) return false;
  if (a.sign_anti.has_value() != b.sign_anti.has_value()) return false;
  if (a.sign_anti && !det_signs_compatible(*a.sign_anti, *b.sign_anti)) return false;
  return true;
}

namespace {

// Torus moves from the Prop 2.17 proof. All return elements of
// SO(p) (+) SO(n-p) with both block determinants +1.

// Signed permutation conj: reorders (cos, sin) pairs; if the permutation is
// odd one row sign is flipped, adding pi to that slot's angle.
struct TorusMatch {
  RealMatrix g1;
  RealMatrix g2;
};

std::optional<TorusMatch> match_torus(int n, int p, const RealVector &th_v,
                                      const RealVector &th_u, double tol) {
  RealVector cv = th_v.array().cos(), sv = th_v.array().sin();
  const RealVector cu = th_u.array().cos(), su = th_u.array().sin();
  RealMatrix g1 = RealMatrix::Identity(n, n);
  RealMatrix g2 = RealMatrix::Identity(n, n);

  std::vector<int> ov(p), ou(p);
  std::iota(ov.begin(), ov.end(), 0);
  std::iota(ou.begin(), ou.end(), 0);
  std::stable_sort(ov.begin(), ov.end(),
                   [&](int a, int b) { return std::abs(cv(a)) > std::abs(cv(b)); });
  std::stable_sort(ou.begin(), ou.end(),
                   [&](int a, int b) { return std::abs(cu(a)) > std::abs(cu(b)); });
  for (int k = 0; k < p; ++k) {
    if (std::abs(std::abs(cv(ov[k])) - std::abs(cu(ou[k]))) > tol * 10) return std::nullopt;
  }
  std::vector<int> perm(p);
  for (int k = 0; k < p; ++k) perm[ou[k]] = ov[k];
  RealMatrix pm = RealMatrix::Zero(p, p);
  for (int newi = 0; newi < p; ++newi) pm(newi, perm[newi]) = 1.0;
  bool flip0 = false;
  if (pm.determinant() < 0) {
    pm.row(0) *= -1.0;
    flip0 = true;
  }
  RealMatrix gg = RealMatrix::Identity(n, n);
  gg.topLeftCorner(p, p) = pm;
  gg.bottomRightCorner(p, p) = pm;
  g1 = gg * g1;
  g2 = g2 * gg.transpose();
  RealVector cv2(p), sv2(p);
  for (int k = 0; k < p; ++k) {
    cv2(k) = cv(perm[k]);
    sv2(k) = sv(perm[k]);
  }
  cv = cv2;
  sv = sv2;
  if (flip0) {
    cv(0) *= -1.0;
    sv(0) *= -1.0;
  }

  // cos sign flips come in pairs (theta += pi on two slots)
  std::vector<int> cflip;
  std::vector<bool> zeroish(p, false);
  for (int k = 0; k < p; ++k) {
    zeroish[k] = std::abs(cv(k)) <= tol * 10 || std::abs(cu(k)) <= tol * 10;
    if (!zeroish[k] && (cv(k) > 0) != (cu(k) > 0)) cflip.push_back(k);
  }
  if (cflip.size() % 2 == 1) {
    int absorb = -1;
    for (int k = 0; k < p; ++k) {
      if (zeroish[k]) {
        absorb = k;
        break;
      }
    }
    if (absorb < 0) return std::nullopt;
    cflip.push_back(absorb);
  }
  for (std::size_t k = 0; k + 1 < cflip.size(); k += 2) {
    const int a = cflip[k], b = cflip[k + 1];
    RealMatrix q = RealMatrix::Identity(n, n);
    q(a, a) = -1;
    q(b, b) = -1;
    q(n - p + a, n - p + a) = -1;
    q(n - p + b, n - p + b) = -1;
    g1 = q * g1;
    cv(a) *= -1; sv(a) *= -1;
    cv(b) *= -1; sv(b) *= -1;
  }

  // sin sign flips
  std::vector<int> sflip;
  std::vector<bool> szero(p, false);
  for (int k = 0; k < p; ++k) {
    szero[k] = std::abs(sv(k)) <= tol * 10 || std::abs(su(k)) <= tol * 10;
    if (!szero[k] && (sv(k) > 0) != (su(k) > 0)) sflip.push_back(k);
  }
  if (2 * p < n) {
    for (int k : sflip) {
      RealMatrix d = RealMatrix::Identity(n, n);
      d(p, p) = -1;  // a middle index
      d(n - p + k, n - p + k) = -1;
      g1 = d * g1;
      g2 = g2 * d;
      sv(k) *= -1;
    }
  } else {
    if (sflip.size() % 2 == 1) {
      int absorb = -1;
      for (int k = 0; k < p; ++k) {
        if (szero[k] &&
            std::find(sflip.begin(), sflip.end(), k) == sflip.end()) {
          absorb = k;
          break;
        }
      }
      if (absorb < 0) return std::nullopt;
      sflip.push_back(absorb);
    }
    for (std::size_t k = 0; k + 1 < sflip.size(); k += 2) {
      const int a = sflip[k], b = sflip[k + 1];
      RealMatrix r = RealMatrix::Identity(n, n);
      r(a, a) = -1;
      r(b, b) = -1;
      g1 = r * g1;
      g2 = g2 * r;
      sv(a) *= -1;
      sv(b) *= -1;
    }
  }
  return TorusMatch{g1, g2};
}

}  // namespace

CosetMatch match_double_coset(const RealMatrix &u, const RealMatrix &vtemplate,
                              int p, bool projective, double tol) {
  const int n = static_cast<int>(u.rows());
  CanonicalParams pu = canonical_params(u, p, projective);
  CanonicalParams pv = canonical_params(vtemplate, p, projective);
  if ((pu.sigma - pv.sigma).lpNorm<Eigen::Infinity>() > tol) {
    throw ParameterMismatch("match_double_coset: singular values differ");
  }
  if (!params_equal(pu, pv, tol)) {
    throw ParameterMismatch("match_double_coset: sign invariants differ");
  }
  CSFactors fv = cs_decompose(vtemplate, p);
  const bool try_neg[2] = {false, true};
  for (int attempt = 0; attempt < (projective ? 2 : 1); ++attempt) {
    const bool neg = try_neg[attempt];
    RealMatrix uw = neg ? RealMatrix(-u) : u;
    CSFactors fu = cs_decompose(uw, p);
    auto m = match_torus(n, p, fv.angles, fu.angles, tol);
    if (!m) continue;
    const RealMatrix lhs = m->g1 * cs_torus(n, p, fv.angles) * m->g2;
    if ((lhs - cs_torus(n, p, fu.angles)).norm() > 1e-8) continue;
    RealMatrix k1 = fu.k1 * m->g1 * fv.k1.transpose();
    RealMatrix k2 = fv.k2.transpose() * m->g2 * fu.k2;
    if ((k1 * vtemplate * k2 - uw).norm() < 1e-8) {
      return CosetMatch{k1, k2, neg};
    }
  }
  throw ParameterMismatch("match_double_coset: constructive matching failed");
}

RealMatrix InvolutionSpec::apply(const RealMatrix &g) const {
  return defining * g * defining.inverse();
}

RealMatrix cartan_double(const RealMatrix &g, const InvolutionSpec &theta) {
  return g * theta.apply(g).inverse();
}

}  // namespace trisynth
