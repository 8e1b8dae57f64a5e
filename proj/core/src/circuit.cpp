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

#include "trisynth/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace trisynth {

namespace {

constexpr Complex kI{0.0, 1.0};

void format_double(std::string &out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  out += buf;
}

struct QuaternionCoords {
  double a, b, c, d;  // u = a I + i (b sx + c sy + d sz)
  double residual;
};

QuaternionCoords su2_coords(const Mat2 &u) {
  QuaternionCoords q{};
  q.a = 0.5 * (u(0, 0).real() + u(1, 1).real());
  q.d = 0.5 * (u(0, 0).imag() - u(1, 1).imag());
  q.b = 0.5 * (u(0, 1).imag() + u(1, 0).imag());
  q.c = 0.5 * (u(0, 1).real() - u(1, 0).real());
  Mat2 re;
  re << Complex(q.a, q.d), Complex(q.c, q.b), Complex(-q.c, q.b), Complex(q.a, -q.d);
  q.residual = (u - re).norm();
  return q;
}

}  // namespace

void Circuit::append(const Circuit &other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  recorded_phase += other.recorded_phase;
}

Mat2 rot_x(double theta) {
  Mat2 m;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 rot_y(double theta) {
  Mat2 m;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

Mat2 rot_z(double theta) {
  Mat2 m;
  m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
  return m;
}

Mat2 pauli(char axis) {
  Mat2 m;
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: throw Error("pauli: bad axis");
  }
  return m;
}

namespace {

Mat2 gate_matrix_1q(const Gate &g) {
  if (const auto *r = std::get_if<AxisRotation>(&g)) {
    switch (r->axis) {
      case 'x': return rot_x(r->theta);
      case 'y': return rot_y(r->theta);
      case 'z': return rot_z(r->theta);
      default: throw Error("gate: bad rotation axis");
    }
  }
  return std::get<SingleQubit>(g).u;
}

int qubit_of_1q(const Gate &g) {
  if (const auto *r = std::get_if<AxisRotation>(&g)) return r->qubit;
  return std::get<SingleQubit>(g).qubit;
}

bool is_1q(const Gate &g) { return !std::holds_alternative<CNot>(g); }

void check_qubit(int q, int n) {
  if (q < 1 || q > n) throw BadQubitIndex("qubit index out of range");
}

void apply_1q(ComplexMatrix &m, const Mat2 &u, int q, int n) {
  // qubit 1 is the most significant bit
  const int dim = 1 << n;
  const int bit = n - q;
  for (int col = 0; col < dim; ++col) {
    for (int base = 0; base < dim; ++base) {
      if (base & (1 << bit)) continue;
      const int hi = base | (1 << bit);
      const Complex x0 = m(base, col), x1 = m(hi, col);
      m(base, col) = u(0, 0) * x0 + u(0, 1) * x1;
      m(hi, col) = u(1, 0) * x0 + u(1, 1) * x1;
    }
  }
}

void apply_cnot(ComplexMatrix &m, int c, int t, int n) {
  const int dim = 1 << n;
  const int cb = n - c, tb = n - t;
  for (int col = 0; col < dim; ++col) {
    for (int row = 0; row < dim; ++row) {
      if ((row & (1 << cb)) && !(row & (1 << tb))) {
        const int other = row | (1 << tb);
        std::swap(m(row, col), m(other, col));
      }
    }
  }
}

}  // namespace

ComplexMatrix evaluate(const Circuit &c) {
  const int dim = 1 << c.n_qubits;
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  for (const Gate &g : c.gates) {
    if (const auto *cn = std::get_if<CNot>(&g)) {
      check_qubit(cn->control, c.n_qubits);
      check_qubit(cn->target, c.n_qubits);
      if (cn->control == cn->target) throw BadQubitIndex("CNOT control == target");
      apply_cnot(m, cn->control, cn->target, c.n_qubits);
    } else {
      const int q = qubit_of_1q(g);
      check_qubit(q, c.n_qubits);
      apply_1q(m, gate_matrix_1q(g), q, c.n_qubits);
    }
  }
  return m;
}

Circuit dagger(const Circuit &c) {
  Circuit out(c.n_qubits);
  out.source_id = c.source_id;
  out.recorded_phase = -c.recorded_phase;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    if (const auto *cn = std::get_if<CNot>(&*it)) {
      out.push(*cn);
    } else if (const auto *r = std::get_if<AxisRotation>(&*it)) {
      out.push(AxisRotation{r->axis, r->qubit, -r->theta});
    } else {
      const auto &s = std::get<SingleQubit>(*it);
      out.push(SingleQubit{s.qubit, s.u.adjoint()});
    }
  }
  return out;
}

ComplexMatrix magic_q() {
  ComplexMatrix q(4, 4);
  q << 1, 1, kI, kI,
       1, -1, kI, -kI,
       -1, 1, kI, -kI,
       1, 1, -kI, -kI;
  return 0.5 * q;
}

ComplexMatrix magic_m() {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m.topLeftCorner(4, 4) = magic_q();
  m.bottomRightCorner(4, 4) = magic_q();
  return m;
}

Circuit magic_circuit() {
  Circuit c(2);
  c.source_id = "magic-q";
  c.push(AxisRotation{'x', 1, M_PI / 2});
  c.push(AxisRotation{'z', 2, -M_PI / 2});
  c.push(CNot{1, 2});
  c.push(AxisRotation{'x', 1, -M_PI});
  c.push(AxisRotation{'x', 2, M_PI / 2});
  c.push(AxisRotation{'z', 2, -M_PI / 2});
  return c;
}

Circuit magic_M_circuit() {
  Circuit c(3);
  c.source_id = "magic-m";
  c.push(AxisRotation{'x', 2, M_PI / 2});
  c.push(AxisRotation{'z', 3, -M_PI / 2});
  c.push(CNot{2, 3});
  c.push(AxisRotation{'x', 2, -M_PI});
  c.push(AxisRotation{'x', 3, M_PI / 2});
  c.push(AxisRotation{'z', 3, -M_PI / 2});
  return c;
}

int cnot_count(const Circuit &c) {
  int n = 0;
  for (const Gate &g : c.gates) n += std::holds_alternative<CNot>(g);
  return n;
}

std::optional<AxisRotation> axis_equivalent(int qubit, const Mat2 &u, double tol) {
  QuaternionCoords q = su2_coords(u);
  if (q.residual > tol) return std::nullopt;
  const double ab = std::abs(q.b), ac = std::abs(q.c), ad = std::abs(q.d);
  const int nonzero = (ab > tol) + (ac > tol) + (ad > tol);
  if (nonzero > 1) return std::nullopt;
  if (nonzero == 0) return AxisRotation{'x', qubit, 0.0};
  if (ab > tol) return AxisRotation{'x', qubit, -2.0 * std::atan2(q.b, q.a)};
  if (ac > tol) return AxisRotation{'y', qubit, -2.0 * std::atan2(q.c, q.a)};
  return AxisRotation{'z', qubit, -2.0 * std::atan2(q.d, q.a)};
}

namespace {

int gate_rotations(const Gate &g) {
  if (std::holds_alternative<CNot>(g)) return 0;
  if (std::holds_alternative<AxisRotation>(g)) return 1;
  const auto &s = std::get<SingleQubit>(g);
  return axis_equivalent(s.qubit, s.u) ? 1 : 3;
}

}  // namespace

int rotation_count(const Circuit &c) {
  int n = 0;
  for (const Gate &g : c.gates) n += gate_rotations(g);
  return n;
}

namespace {

bool touches(const Gate &g, int q) {
  if (const auto *cn = std::get_if<CNot>(&g)) return cn->control == q || cn->target == q;
  return qubit_of_1q(g) == q;
}

bool is_trivial(const Gate &g) {
  if (const auto *r = std::get_if<AxisRotation>(&g)) {
    return std::abs(std::sin(r->theta / 2)) < 1e-12;
  }
  if (const auto *s = std::get_if<SingleQubit>(&g)) {
    return std::min((s->u - Mat2::Identity()).norm(), (s->u + Mat2::Identity()).norm()) < 1e-12;
  }
  return false;
}

// X rotations commute with CNOT targets, Z rotations with controls.
bool commutes_with_cnot(const Gate &g, const CNot &cn) {
  const auto *r = std::get_if<AxisRotation>(&g);
  if (!r) return false;
  if (r->qubit == cn.target) return r->axis == 'x';
  if (r->qubit == cn.control) return r->axis == 'z';
  return true;  // disjoint qubits
}

int next_touching(const std::vector<Gate> &gates, std::size_t from, int q) {
  for (std::size_t k = from + 1; k < gates.size(); ++k) {
    if (touches(gates[k], q)) return static_cast<int>(k);
  }
  return -1;
}

bool drop_trivial(std::vector<Gate> &gates) {
  bool changed = false;
  for (std::size_t k = 0; k < gates.size();) {
    if (is_trivial(gates[k])) {
      gates.erase(gates.begin() + static_cast<long>(k));
      changed = true;
    } else {
      ++k;
    }
  }
  return changed;
}

// Identical CNOTs cancel when every intervening gate on their qubits
// commutes through.
bool cancel_cnot_pairs(std::vector<Gate> &gates) {
  for (std::size_t a = 0; a < gates.size(); ++a) {
    const auto *cn = std::get_if<CNot>(&gates[a]);
    if (!cn) continue;
    for (std::size_t b = a + 1; b < gates.size(); ++b) {
      const auto *cb = std::get_if<CNot>(&gates[b]);
      if (cb && cb->control == cn->control && cb->target == cn->target) {
        bool clean = true;
        for (std::size_t m = a + 1; m < b && clean; ++m) {
          if (touches(gates[m], cn->control) || touches(gates[m], cn->target)) {
            clean = commutes_with_cnot(gates[m], *cn);
          }
        }
        if (clean) {
          gates.erase(gates.begin() + static_cast<long>(b));
          gates.erase(gates.begin() + static_cast<long>(a));
          return true;
        }
        break;
      }
      if (touches(gates[b], cn->control) || touches(gates[b], cn->target)) {
        if (!commutes_with_cnot(gates[b], *cn)) break;
      }
    }
  }
  return false;
}

bool merge_1q_pairs(std::vector<Gate> &gates) {
  for (std::size_t a = 0; a < gates.size(); ++a) {
    if (!is_1q(gates[a])) continue;
    const int q = qubit_of_1q(gates[a]);
    const int b = next_touching(gates, a, q);
    if (b < 0 || !is_1q(gates[b])) continue;
    const int before = gate_rotations(gates[a]) + gate_rotations(gates[b]);
    const Mat2 fused = gate_matrix_1q(gates[b]) * gate_matrix_1q(gates[a]);
    Gate merged;
    int after;
    if (auto ax = axis_equivalent(q, fused)) {
      merged = *ax;
      after = 1;
    } else {
      merged = SingleQubit{q, fused};
      after = 3;
    }
    if (after <= before) {
      gates[a] = merged;
      gates.erase(gates.begin() + b);
      return true;
    }
  }
  return false;
}

// Move an axis rotation over a compatible CNOT when a fusable 1q gate waits
// on the other side.
bool hop_and_fuse(std::vector<Gate> &gates) {
  for (std::size_t a = 0; a < gates.size(); ++a) {
    const auto *r = std::get_if<AxisRotation>(&gates[a]);
    if (!r) continue;
    const int q = r->qubit;
    const int b = next_touching(gates, a, q);
    if (b < 0) continue;
    const auto *cn = std::get_if<CNot>(&gates[b]);
    if (!cn || !commutes_with_cnot(gates[a], *cn)) continue;
    const int c = next_touching(gates, b, q);
    if (c < 0 || !is_1q(gates[static_cast<std::size_t>(c)])) continue;
    const int before = gate_rotations(gates[a]) + gate_rotations(gates[c]);
    const Mat2 fused = gate_matrix_1q(gates[c]) * gate_matrix_1q(gates[a]);
    Gate merged;
    int after;
    if (auto ax = axis_equivalent(q, fused)) {
      merged = *ax;
      after = 1;
    } else {
      merged = SingleQubit{q, fused};
      after = 3;
    }
    if (after <= before) {
      gates[static_cast<std::size_t>(c)] = merged;
      gates.erase(gates.begin() + static_cast<long>(a));
      return true;
    }
  }
  return false;
}

}  // namespace

Circuit peephole(const Circuit &c) {
  Circuit out = c;
  for (int iter = 0; iter < 500; ++iter) {
    bool changed = drop_trivial(out.gates);
    if (!changed) changed = cancel_cnot_pairs(out.gates);
    if (!changed) changed = merge_1q_pairs(out.gates);
    if (!changed) changed = hop_and_fuse(out.gates);
    if (!changed) break;
  }
  return out;
}

EulerZYZ su2_euler(const Mat2 &u, double tol) {
  if (std::abs(u.determinant() - 1.0) > tol ||
      (u * u.adjoint() - Mat2::Identity()).norm() > tol) {
    throw NotSpecialUnitary("su2_euler: input is not in SU(2)");
  }
  const double ca = std::abs(u(0, 0));
  const double sa = std::abs(u(1, 0));
  const double theta = 2.0 * std::atan2(sa, ca);
  double sum = 0.0, diff = 0.0;  // phi + psi, phi - psi
  if (ca > tol) sum = -2.0 * std::arg(u(0, 0));
  if (sa > tol) diff = 2.0 * std::arg(u(1, 0));
  if (ca <= tol) sum = diff;   // phi = diff, psi = 0
  if (sa <= tol) diff = 0.0;   // psi-free branch: psi = (sum - diff)/2 ... see below
  EulerZYZ e{0.5 * (sum + diff), theta, 0.5 * (sum - diff)};
  return e;
}

std::string emit_text(const Circuit &c) {
  std::string out;
  out += "# trisynth circuit; gate order: first line applied first\n";
  if (c.recorded_phase != 0.0) {
    out += "# phase ";
    format_double(out, c.recorded_phase);
    out += "\n";
  }
  out += "QUBITS " + std::to_string(c.n_qubits) + "\n";
  for (const Gate &g : c.gates) {
    if (const auto *cn = std::get_if<CNot>(&g)) {
      out += "CX " + std::to_string(cn->control) + " " + std::to_string(cn->target) + "\n";
    } else if (const auto *r = std::get_if<AxisRotation>(&g)) {
      out += "R";
      out += static_cast<char>(std::toupper(r->axis));
      out += " " + std::to_string(r->qubit) + " ";
      format_double(out, r->theta);
      out += "\n";
    } else {
      const auto &s = std::get<SingleQubit>(g);
      out += "U " + std::to_string(s.qubit);
      for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 2; ++col) {
          out += " ";
          format_double(out, s.u(row, col).real());
          out += " ";
          format_double(out, s.u(row, col).imag());
        }
      }
      out += "\n";
    }
  }
  return out;
}

Circuit parse_text(const std::string &text) {
  Circuit c(0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int max_qubit = 0;
  bool have_qubits = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto want_int = [&](int &v) {
      if (!(ls >> v)) throw ParseError("expected integer", lineno);
    };
    auto want_double = [&](double &v) {
      if (!(ls >> v)) throw ParseError("expected number", lineno);
      if (!std::isfinite(v)) throw ParseError("non-finite number", lineno);
    };
    if (tok == "QUBITS") {
      want_int(c.n_qubits);
      if (c.n_qubits < 1 || c.n_qubits > 12) throw ParseError("bad qubit count", lineno);
      have_qubits = true;
    } else if (tok == "CX") {
      int a, b;
      want_int(a);
      want_int(b);
      c.push(CNot{a, b});
      max_qubit = std::max({max_qubit, a, b});
    } else if (tok == "RX" || tok == "RY" || tok == "RZ") {
      int q;
      double th;
      want_int(q);
      want_double(th);
      c.push(AxisRotation{static_cast<char>(std::tolower(tok[1])), q, th});
      max_qubit = std::max(max_qubit, q);
    } else if (tok == "U") {
      int q;
      want_int(q);
      double v[8];
      for (double &x : v) want_double(x);
      Mat2 u;
      u << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7]);
      if (std::abs(u.determinant() - 1.0) > 1e-9 ||
          (u * u.adjoint() - Mat2::Identity()).norm() > 1e-9) {
        throw ParseError("U gate is not special unitary", lineno);
      }
      c.push(SingleQubit{q, u});
      max_qubit = std::max(max_qubit, q);
    } else {
      throw ParseError("unknown gate '" + tok + "'", lineno);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens", lineno);
  }
  if (!have_qubits) c.n_qubits = std::max(max_qubit, 1);
  if (max_qubit > c.n_qubits) throw ParseError("gate uses qubit beyond QUBITS", lineno);
  return c;
}

std::string emit_qasm(const Circuit &c) {
  std::string out = "OPENQASM 2.0; include \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
  auto emit_rot = [&out](char axis, int q, double theta) {
    out += "r";
    out += axis;
    out += "(";
    format_double(out, theta);
    out += ") q[" + std::to_string(q - 1) + "];\n";
  };
  for (const Gate &g : c.gates) {
    if (const auto *cn = std::get_if<CNot>(&g)) {
      out += "cx q[" + std::to_string(cn->control - 1) + "],q[" +
             std::to_string(cn->target - 1) + "];\n";
    } else if (const auto *r = std::get_if<AxisRotation>(&g)) {
      emit_rot(r->axis, r->qubit, r->theta);
    } else {
      const auto &s = std::get<SingleQubit>(g);
      EulerZYZ e = su2_euler(s.u);
      // application order psi, theta, phi
      emit_rot('z', s.qubit, e.psi);
      emit_rot('y', s.qubit, e.theta);
      emit_rot('z', s.qubit, e.phi);
    }
  }
  return out;
}

PhaseDistance phase_distance(const ComplexMatrix &got, const ComplexMatrix &target) {
  const Complex tr = (got.adjoint() * target).trace();
  Complex lambda{1.0, 0.0};
  if (std::abs(tr) > 1e-300) lambda = tr / std::abs(tr);
  return PhaseDistance{(lambda * got - target).norm(), lambda};
}

}  // namespace trisynth
