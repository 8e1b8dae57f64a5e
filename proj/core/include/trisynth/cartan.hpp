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

#include <optional>
#include <set>
#include <vector>

#include "trisynth/matlib.hpp"

// Double-coset machinery: block subgroups PSO(pi), partition meets,
// p-canonical and projective canonical parameters, and the constructive
// matching that produces K1, K2 with K1 * Vtemplate * K2 = U.

namespace trisynth {

// Partition of [n] into disjoint nonempty blocks.
struct Partition {
  int n;
  std::vector<std::vector<int>> blocks;  // 1-based indices

  void validate() const;  // throws Error on overlap / bad cover
};

Partition partition_meet(const Partition &a, const Partition &b);

struct BlockGroupSpec {
  int n;
  Partition pi;
};

struct BlockMembership {
  bool member;
  double residual;  // off-block Frobenius norm
};

// Membership in SO(pi) (projective: in P(...)): off-block entries vanish and
// a (projective) lift exists with every block determinant +1.
BlockMembership block_membership(const RealMatrix &v, const BlockGroupSpec &spec,
                                 bool projective, double tol = kMembershipTol);

// Sign of a determinant with an undetermined state when |det| is tiny
// (happens when sigma contains 0); Undetermined compares equal to either sign.
enum class DetSign { Minus = -1, Undetermined = 0, Plus = 1 };
bool det_signs_compatible(DetSign a, DetSign b);

// p-canonical (Def-style) or projective p-canonical double-coset invariants.
struct CanonicalParams {
  int p;
  RealVector sigma;            // sorted descending, in [0, 1]
  std::optional<DetSign> sign_corner;  // det of upper-left p x p corner
  std::optional<DetSign> sign_anti;    // det of upper-right p x p corner (p = n/2)
  bool projective;
};

CanonicalParams canonical_params(const RealMatrix &u, int p, bool projective);

bool params_equal(const CanonicalParams &a, const CanonicalParams &b,
                  double sigma_tol = 1e-9);

// Find K1, K2 in SO(p) (+) SO(n-p), all block determinants +1, with
// K1 * vtemplate * K2 = u (or -u when projective and negated is set).
// Throws ParameterMismatch when the canonical parameters differ.
struct CosetMatch {
  RealMatrix k1;
  RealMatrix k2;
  bool negated;  // matched against -u (projective twin)
};
CosetMatch match_double_coset(const RealMatrix &u, const RealMatrix &vtemplate,
                              int p, bool projective, double tol = 1e-9);

// Involution given by conjugation with a fixed matrix (e.g. a Delta_S).
struct InvolutionSpec {
  RealMatrix defining;  // theta(g) = defining * g * defining^{-1}

  RealMatrix apply(const RealMatrix &g) const;
};

// g * theta(g)^{-1}; equals k1 a^2 k1^{-1} when g = k1 a k2.
RealMatrix cartan_double(const RealMatrix &g, const InvolutionSpec &theta);

}  // namespace trisynth
