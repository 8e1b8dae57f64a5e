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

#include "trisynth/cartan.hpp"
#include "trisynth/circuit.hpp"
#include "trisynth/lie8.hpp"
#include "trisynth/matlib.hpp"

// The synthesis pipeline: apply the triality map, run two nested Cartan
// decompositions (block structures 125|34678 then 125|348|67), solve the
// template parameters, pull everything back through the inverse map and the
// magic-basis conjugation, and assemble a verified circuit with at most 14
// CNOTs and 35 single-qubit rotations.

namespace trisynth {

// mu^{-1}(K) = (C_1^2 (R_x(gamma) (x) r1) C_1^2) (x) r2 on qubits (1,2 | 3).
struct TemplateK {
  double gamma;
  Mat2 r1;
  Mat2 r2;

  Circuit gates() const;      // 2 CNOTs
  ComplexMatrix matrix() const;
};

// mu^{-1}(B) = R_y(beta1) (x) R_y(beta2) (x) I_2.
struct TemplateB {
  double beta1;
  double beta2;

  Circuit gates() const;      // 0 CNOTs
  ComplexMatrix matrix() const;
};

struct TemplateA {
  std::array<double, 3> alpha;
};

// The displayed matrix of the image of the template set under the triality
// map: a fixed signed permutation combined with three plane rotations.
RealMatrix t_of_A(double a1, double a2, double a3);

// Angles with |cos(alpha_i)| equal to the sorted corner singular values;
// principal branch with sin >= 0.
std::array<double, 3> solve_A_params(const CanonicalParams &params);

// First Cartan level: W in SO(8) equals k1 * t_of_A(alpha) * k2 with k1, k2
// in SO(125|34678) (both block determinants +1), projectively.
struct Level1 {
  RealMatrix k1;
  RealMatrix k2;
  std::array<double, 3> alpha;
  bool negated;
};
Level1 decompose_level1(const RealMatrix &w);

// Second level: a 125|34678 factor splits as ka * Torus * kb with ka, kb in
// SO(125|348|67) (all block determinants +1); the torus rotates the planes
// {4,6} and {7,8}. `lifted` is the +- representative actually decomposed.
struct Level2 {
  RealMatrix ka;
  RealMatrix kb;
  double theta0;  // plane {4,6}
  double theta1;  // plane {7,8}
  RealMatrix lifted;

  TemplateB b() const { return TemplateB{-theta0, theta1}; }
};
Level2 decompose_level2(const RealMatrix &kp);

// Recover (gamma, r1, r2) from K = T^{-1}(level-2 factor) by peeling tensor
// factors of M K M^dag. Throws NotInCartanSubgroup on residuals.
TemplateK extract_K_gates(const RealMatrix &k8);

// A 3-qubit circuit with at most 4 CNOTs evaluating to
// M * T^{-1}(t_of_A(alpha)) * M^dag up to a global phase.
// Throws TemplateVerificationFailed if the matrix check fails.
Circuit circuit_for_A(const std::array<double, 3> &alpha);

// The seven factors of the decomposition with their continuous parameters.
struct DecompositionTree {
  RealMatrix source;                 // V
  RealMatrix k1, k2, k3, k4;         // SO(8) representatives in K_{chi1,chi2}
  TemplateK g1, g2, g3, g4;          // gate parameters of k1..k4
  TemplateB b1, b2;
  TemplateA a;

  // 16 scalar angles + 4 SU(2) elements = 28 continuous parameters
  // (the theorem's census: the x-axis Euler parts of the two inner qubit-2
  // gates merge into one central angle, and the qubit-3 gates fuse in pairs).
  struct Census {
    std::array<double, 3> alpha;
    double alpha_central;
    std::array<double, 4> beta;
    std::array<double, 4> gamma;
    std::array<double, 4> euler;   // z/y Euler parts of the inner qubit-2 gates
    std::array<Mat2, 4> su2;       // outer qubit-2 gates and fused qubit-3 gates
    int total() const { return 3 + 1 + 4 + 4 + 4 + 4 * 3; }
  };
  Census census() const;
};

struct SynthesisResult {
  Circuit circuit;
  DecompositionTree tree;
};

// Thm-style pipeline; the result evaluates to V up to a recorded global
// phase, with cnot_count <= 14 and rotation_count <= 35 after cleanup.
// Throws NotSpecialOrthogonal / SynthesisVerificationFailed.
SynthesisResult synthesize(const RealMatrix &v);

struct VerifyReport {
  double error;   // min over unit phases of |lambda * evaluate(c) - V|_F
  Complex phase;  // the minimising phase
  int cnots;
  int rotations;
};
VerifyReport verify(const RealMatrix &v, const Circuit &c);

}  // namespace trisynth
