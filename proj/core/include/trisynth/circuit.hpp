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
#include <string>
#include <variant>
#include <vector>

#include "trisynth/matlib.hpp"

// Gate-level IR and exact simulator. Gate lists are in application order:
// evaluate([g1..gk]) = G_k ... G_2 G_1 in the lexicographic binary basis,
// qubit 1 being the leftmost tensor factor.

namespace trisynth {

using Mat2 = Eigen::Matrix2cd;

struct CNot {
  int control;
  int target;
};

struct AxisRotation {
  char axis;  // 'x', 'y' or 'z'
  int qubit;
  double theta;  // R_a(theta) = exp(-i theta sigma_a / 2)
};

struct SingleQubit {
  int qubit;
  Mat2 u;  // special unitary
};

using Gate = std::variant<CNot, AxisRotation, SingleQubit>;

struct Circuit {
  int n_qubits = 3;
  std::vector<Gate> gates;  // first gate applied first
  std::string source_id;    // metadata: source decomposition id
  double recorded_phase = 0.0;  // residual global phase of the realisation

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  void push(Gate g) { gates.push_back(std::move(g)); }
  void append(const Circuit &other);
};

Mat2 rot_x(double theta);
Mat2 rot_y(double theta);
Mat2 rot_z(double theta);
Mat2 pauli(char axis);

// Exact 2^n x 2^n evaluation; throws BadQubitIndex.
ComplexMatrix evaluate(const Circuit &c);

// Reverse-order dagger of a circuit.
Circuit dagger(const Circuit &c);

// The magic matrix of the fixed two-qubit basis change and its one-CNOT
// realisation; magic_M_circuit embeds it on qubits (2,3) of three.
ComplexMatrix magic_q();
ComplexMatrix magic_m();  // I2 (x) Q
Circuit magic_circuit();
Circuit magic_M_circuit();

int cnot_count(const Circuit &c);
// Axis rotations count 1; a SingleQubit counts 3 (ZYZ) unless it is an axis
// rotation within 1e-12, in which case 1.
int rotation_count(const Circuit &c);

// If u = +- R_a(theta) within tol, return the equivalent axis rotation.
std::optional<AxisRotation> axis_equivalent(int qubit, const Mat2 &u,
                                            double tol = 1e-12);

// Cleanup: cancels adjacent identical CNOTs, merges same-axis runs, fuses
// single-qubit runs (only when the rotation census does not grow), lets
// X rotations slide over CNOT targets and Z rotations over controls.
// Evaluation is preserved up to a global phase.
Circuit peephole(const Circuit &c);

// Euler angles with u = R_z(phi) R_y(theta) R_z(psi), theta in [0, pi].
// Throws NotSpecialUnitary.
struct EulerZYZ {
  double phi, theta, psi;
};
EulerZYZ su2_euler(const Mat2 &u, double tol = 1e-10);

// Text format: one gate per line (CX c t | RX q theta | RY q theta |
// RZ q theta | U q re00 im00 re01 im01 re10 im10 re11 im11), '#' comments,
// optional QUBITS directive. Angles printed with 16 significant digits.
std::string emit_text(const Circuit &c);
Circuit parse_text(const std::string &text);

// OpenQASM 2.0 subset over cx/rx/ry/rz, qubits 0-indexed on export.
std::string emit_qasm(const Circuit &c);

// min over unit phase lambda of |lambda * evaluate(c) - target|_F, with the
// minimising phase.
struct PhaseDistance {
  double error;
  Complex phase;
};
PhaseDistance phase_distance(const ComplexMatrix &got, const ComplexMatrix &target);

}  // namespace trisynth
