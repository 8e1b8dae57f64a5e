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

#include <array>
#include <string>
#include <vector>

#include "trisynth/matlib.hpp"

// The so(8) structure layer: f-basis, Cartan subalgebra, D4 roots and root
// vectors, Hurwitz quaternions, the order-3 triality automorphism tau on the
// algebra, the induced map T on the group, and the Pauli-word dictionary.

namespace trisynth {

inline constexpr int kFBasisSize = 28;

// f_ji has +1 at (j,i) and -1 at (i,j), 1-based, i < j. Basis order is the
// pairs (j,i) sorted by (i, j): (2,1),(3,1),...,(8,1),(3,2),(4,2),...
int f_index(int j, int i);
std::pair<int, int> f_pair(int index);
RealMatrix f_matrix(int j, int i);

// Element of so(8) as coefficients over the 28-element basis {f_ji}.
struct SkewSym8 {
  Eigen::Matrix<double, kFBasisSize, 1> coeffs;

  SkewSym8() { coeffs.setZero(); }
  static SkewSym8 from_matrix(const RealMatrix &x, double tol = kMembershipTol);
  RealMatrix matrix() const;
};

// x1 + x2 i + x3 j + x4 k
struct Quaternion {
  double x1, x2, x3, x4;

  Quaternion operator*(const Quaternion &o) const;
  Quaternion operator-() const { return {-x1, -x2, -x3, -x4}; }
  double norm() const;
};

// omega = (-1 + i + j + k)/2, the order-3 Hurwitz unit driving triality.
Quaternion omega_quaternion();

// The 24 unit Hurwitz quaternions: +-1, +-i, +-j, +-k, (+-1 +- i +- j +- k)/2.
std::vector<Quaternion> hurwitz_units();

// The 4x4 matrix of H -> omega H on the Cartan coordinates.
RealMatrix omega_matrix();

// Cartan basis H_p = f_{2p,2p-1}, p = 1..4.
std::array<RealMatrix, 4> cartan_basis();

// Root vectors X_alpha for the 24 roots +-e_p +- e_q of D4, stored with
// integer root coordinates.
struct RootVectorTable {
  struct Entry {
    std::array<int, 4> root;
    ComplexMatrix x;  // 8x8
  };
  std::vector<Entry> entries;

  const ComplexMatrix &vector_for(const std::array<int, 4> &root) const;
};
RootVectorTable build_root_vectors();

// tau as a 28x28 orthogonal matrix over the f-basis, plus cached images of
// the basis elements for tau and tau^2. Immutable after construction.
struct TrialityOperator {
  Eigen::Matrix<double, kFBasisSize, kFBasisSize> m28;
  std::array<RealMatrix, kFBasisSize> tau_f;   // tau(f_ji), 8x8
  std::array<RealMatrix, kFBasisSize> tau2_f;  // tau^2(f_ji)
};

// Construct tau from the omega action on the Cartan subalgebra and the signed
// root-vector permutation, then verify the automorphism identity on every
// basis pair. Throws ConstructionInconsistent on failure.
TrialityOperator build_tau();

// Shared, lazily-built instance (thread-safe; read-only after construction).
const TrialityOperator &triality();

SkewSym8 tau_apply(const SkewSym8 &x);

// Pauli word over {I,X,Y,Z}: realised as i sigma_a (x) sigma_b (x) sigma_c.
struct PauliWord {
  std::array<char, 3> letters;

  ComplexMatrix unitary() const;          // i sigma_a (x) sigma_b (x) sigma_c
  bool is_real() const;                   // odd number of Y letters
  RealMatrix so8_matrix() const;          // throws unless real
  std::string str() const { return std::string(letters.begin(), letters.end()); }
};

// The 28 odd-Y three-letter words, each a basis element of so(8).
std::vector<PauliWord> odd_y_words();

// tau(word) = sign * 2 f_ji
struct PauliTrialityEntry {
  PauliWord word;
  int sign;  // +1 or -1
  int j, i;
};
std::vector<PauliTrialityEntry> pauli_triality_table();

// T(V): evaluate tau along a deterministic Givens factorization of V.
// Result is special orthogonal, well defined up to global sign.
RealMatrix triality_group(const RealMatrix &v);

// T^{-1} = T^2.
RealMatrix triality_inverse(const RealMatrix &v);

double trace_form(const SkewSym8 &x, const SkewSym8 &y);

// ZD4 test: integer vector with even coordinate sum.
bool root_lattice_membership(const std::array<long, 4> &v);
// Dual lattice: all-integer or all-half-integer coordinates.
bool dual_lattice_membership(const std::array<double, 4> &x, double tol = 1e-9);

// The printed 28x28 matrix of tau as a run-length string (digits are runs of
// zeros, +/- are +-1/2), kept as a validation fixture for the construction.
extern const char *const kPrintedTauString;
Eigen::Matrix<double, kFBasisSize, kFBasisSize> decode_printed_tau_string();

}  // namespace trisynth
