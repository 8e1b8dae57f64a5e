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

#include "trisynth/lie8.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace trisynth {

namespace {

constexpr Complex kI{0.0, 1.0};

std::array<std::pair<int, int>, kFBasisSize> make_pairs() {
  std::array<std::pair<int, int>, kFBasisSize> pairs{};
  int k = 0;
  for (int i = 1; i <= 7; ++i) {
    for (int j = i + 1; j <= 8; ++j) pairs[k++] = {j, i};
  }
  return pairs;
}

const std::array<std::pair<int, int>, kFBasisSize> kPairs = make_pairs();

}  // namespace

int f_index(int j, int i) {
  for (int k = 0; k < kFBasisSize; ++k) {
    if (kPairs[k].first == j && kPairs[k].second == i) return k;
  }
  throw Error("f_index: bad pair");
}

std::pair<int, int> f_pair(int index) { return kPairs.at(index); }

RealMatrix f_matrix(int j, int i) {
  RealMatrix m = RealMatrix::Zero(8, 8);
  m(j - 1, i - 1) = 1.0;
  m(i - 1, j - 1) = -1.0;
  return m;
}

SkewSym8 SkewSym8::from_matrix(const RealMatrix &x, double tol) {
  if ((x + x.transpose()).norm() > tol) {
    throw NotSkewSymmetric("SkewSym8: input is not skew-symmetric");
  }
  SkewSym8 s;
  for (int k = 0; k < kFBasisSize; ++k) {
    auto [j, i] = kPairs[k];
    s.coeffs(k) = x(j - 1, i - 1);
  }
  return s;
}

RealMatrix SkewSym8::matrix() const {
  RealMatrix m = RealMatrix::Zero(8, 8);
  for (int k = 0; k < kFBasisSize; ++k) {
    auto [j, i] = kPairs[k];
    m(j - 1, i - 1) = coeffs(k);
    m(i - 1, j - 1) = -coeffs(k);
  }
  return m;
}

Quaternion Quaternion::operator*(const Quaternion &o) const {
  return {x1 * o.x1 - x2 * o.x2 - x3 * o.x3 - x4 * o.x4,
          x1 * o.x2 + x2 * o.x1 + x3 * o.x4 - x4 * o.x3,
          x1 * o.x3 - x2 * o.x4 + x3 * o.x1 + x4 * o.x2,
          x1 * o.x4 + x2 * o.x3 - x3 * o.x2 + x4 * o.x1};
}

double Quaternion::norm() const {
  return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4);
}

Quaternion omega_quaternion() { return {-0.5, 0.5, 0.5, 0.5}; }

std::vector<Quaternion> hurwitz_units() {
  std::vector<Quaternion> units;
  for (int k = 0; k < 4; ++k) {
    for (double s : {1.0, -1.0}) {
      Quaternion q{0, 0, 0, 0};
      (&q.x1)[k] = s;
      units.push_back(q);
    }
  }
  for (double a : {0.5, -0.5}) {
    for (double b : {0.5, -0.5}) {
      for (double c : {0.5, -0.5}) {
        for (double d : {0.5, -0.5}) units.push_back({a, b, c, d});
      }
    }
  }
  return units;
}

RealMatrix omega_matrix() {
  RealMatrix m(4, 4);
  m << -1, -1, -1, -1,
        1, -1, -1,  1,
        1,  1, -1, -1,
        1, -1,  1, -1;
  return 0.5 * m;
}

std::array<RealMatrix, 4> cartan_basis() {
  return {f_matrix(2, 1), f_matrix(4, 3), f_matrix(6, 5), f_matrix(8, 7)};
}

RootVectorTable build_root_vectors() {
  RootVectorTable table;
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      for (int sp : {1, -1}) {
        for (int sq : {1, -1}) {
          std::array<int, 4> root{0, 0, 0, 0};
          root[p] = sp;
          root[q] = sq;
          // 2x2 block above the diagonal at rows [2p+1,2p+2] x cols [2q+1,2q+2]
          Eigen::Matrix2cd b;
          if (sp == 1 && sq == -1) {
            b << 1, kI, -kI, 1;
          } else if (sp == 1 && sq == 1) {
            b << 1, -kI, -kI, -1;
          } else if (sp == -1 && sq == 1) {  // conj of e_p - e_q
            b << 1, -kI, kI, 1;
          } else {                           // conj of e_p + e_q
            b << 1, kI, kI, -1;
          }
          b *= 0.5;
          ComplexMatrix x = ComplexMatrix::Zero(8, 8);
          x.block(2 * p, 2 * q, 2, 2) = b;
          x.block(2 * q, 2 * p, 2, 2) = -b.transpose();
          table.entries.push_back({root, x});
        }
      }
    }
  }
  return table;
}

const ComplexMatrix &RootVectorTable::vector_for(const std::array<int, 4> &root) const {
  for (const auto &e : entries) {
    if (e.root == root) return e.x;
  }
  throw Error("RootVectorTable: unknown root");
}

namespace {

bool in_minus_set(const std::array<int, 4> &root) {
  // {e1-e3, e1+e4, e2+e3, e2+e4} and their negatives
  static const std::array<std::array<int, 4>, 4> base = {{
      {1, 0, -1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}}};
  for (const auto &b : base) {
    bool plus = true, minus = true;
    for (int k = 0; k < 4; ++k) {
      if (root[k] != b[k]) plus = false;
      if (root[k] != -b[k]) minus = false;
    }
    if (plus || minus) return true;
  }
  return false;
}

std::array<int, 4> omega_root(const std::array<int, 4> &root) {
  RealMatrix w = omega_matrix();
  std::array<int, 4> out{};
  for (int r = 0; r < 4; ++r) {
    double v = 0;
    for (int c = 0; c < 4; ++c) v += w(r, c) * root[c];
    const long rounded = std::lround(v);
    if (std::abs(v - rounded) > 1e-12) throw Error("omega_root: non-integral image");
    out[r] = static_cast<int>(rounded);
  }
  return out;
}

// Expand f_ji over the Cartan/root-vector basis, apply tau there, return the
// image as an 8x8 complex matrix.
ComplexMatrix tau_of_f(int j, int i, const RootVectorTable &roots) {
  if (i % 2 == 1 && j == i + 1) {
    // f_{2p,2p-1} = H_p: image is omega H_p
    const int p = (i - 1) / 2;
    const RealMatrix w = omega_matrix();
    auto hs = cartan_basis();
    RealMatrix out = RealMatrix::Zero(8, 8);
    for (int r = 0; r < 4; ++r) out += w(r, p) * hs[r];
    return out.cast<Complex>();
  }
  const int p = (i - 1) / 2;  // 0-based block indices, p < q
  const int q = (j - 1) / 2;
  const int r = (i - 1) % 2;
  const int c = (j - 1) % 2;
  // solve for the 4 coefficients over X_{+-e_p +- e_q} matching the block of
  // f_ji, whose above-diagonal 2x2 block is -1 at (r, c)
  Eigen::Matrix4cd a;
  std::array<std::array<int, 4>, 4> labels{};
  int col = 0;
  for (int sp : {1, -1}) {
    for (int sq : {1, -1}) {
      std::array<int, 4> root{0, 0, 0, 0};
      root[p] = sp;
      root[q] = sq;
      labels[col] = root;
      const ComplexMatrix &x = roots.vector_for(root);
      a(0, col) = x(2 * p, 2 * q);
      a(1, col) = x(2 * p, 2 * q + 1);
      a(2, col) = x(2 * p + 1, 2 * q);
      a(3, col) = x(2 * p + 1, 2 * q + 1);
      ++col;
    }
  }
  Eigen::Vector4cd target = Eigen::Vector4cd::Zero();
  target(r * 2 + c) = -1.0;
  Eigen::Vector4cd coef = a.fullPivLu().solve(target);
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (int k = 0; k < 4; ++k) {
    const auto wroot = omega_root(labels[k]);
    const double sign = in_minus_set(labels[k]) ? -1.0 : 1.0;
    out += coef(k) * sign * roots.vector_for(wroot);
  }
  return out;
}

}  // namespace

TrialityOperator build_tau() {
  RootVectorTable roots = build_root_vectors();
  TrialityOperator op;
  for (int k = 0; k < kFBasisSize; ++k) {
    auto [j, i] = kPairs[k];
    ComplexMatrix img = tau_of_f(j, i, roots);
    if (img.imag().norm() > 1e-12) {
      throw ConstructionInconsistent("build_tau: non-real image of f basis element");
    }
    RealMatrix re = img.real();
    if ((re + re.transpose()).norm() > 1e-12) {
      throw ConstructionInconsistent("build_tau: non-skew image");
    }
    op.tau_f[k] = re;
    for (int r = 0; r < kFBasisSize; ++r) {
      auto [jj, ii] = kPairs[r];
      op.m28(r, k) = re(jj - 1, ii - 1);
    }
  }
  // tau^2 images
  for (int k = 0; k < kFBasisSize; ++k) {
    Eigen::Matrix<double, kFBasisSize, 1> col2 = op.m28 * op.m28.col(k);
    RealMatrix m = RealMatrix::Zero(8, 8);
    for (int r = 0; r < kFBasisSize; ++r) {
      auto [jj, ii] = kPairs[r];
      m(jj - 1, ii - 1) = col2(r);
      m(ii - 1, jj - 1) = -col2(r);
    }
    op.tau2_f[k] = m;
  }
  // automorphism identity on every unordered basis pair
  auto apply = [&op](const RealMatrix &x) {
    RealMatrix out = RealMatrix::Zero(8, 8);
    for (int k = 0; k < kFBasisSize; ++k) {
      auto [j, i] = kPairs[k];
      out += x(j - 1, i - 1) * op.tau_f[k];
    }
    return out;
  };
  for (int a = 0; a < kFBasisSize; ++a) {
    for (int b = a + 1; b < kFBasisSize; ++b) {
      auto [ja, ia] = kPairs[a];
      auto [jb, ib] = kPairs[b];
      const RealMatrix fa = f_matrix(ja, ia), fb = f_matrix(jb, ib);
      const RealMatrix lhs = apply(fa * fb - fb * fa);
      const RealMatrix rhs = op.tau_f[a] * op.tau_f[b] - op.tau_f[b] * op.tau_f[a];
      if ((lhs - rhs).norm() > 1e-12) {
        throw ConstructionInconsistent("build_tau: automorphism identity failed");
      }
    }
  }
  if ((op.m28 * op.m28 * op.m28 -
       Eigen::Matrix<double, kFBasisSize, kFBasisSize>::Identity())
          .norm() > 1e-12) {
    throw ConstructionInconsistent("build_tau: tau does not have order 3");
  }
  return op;
}

const TrialityOperator &triality() {
  static const TrialityOperator op = build_tau();
  return op;
}

SkewSym8 tau_apply(const SkewSym8 &x) {
  SkewSym8 out;
  out.coeffs = triality().m28 * x.coeffs;
  return out;
}

ComplexMatrix PauliWord::unitary() const {
  auto sigma = [](char ch) -> Eigen::Matrix2cd {
    Eigen::Matrix2cd m;
    switch (ch) {
      case 'I': m << 1, 0, 0, 1; break;
      case 'X': m << 0, 1, 1, 0; break;
      case 'Y': m << 0, -kI, kI, 0; break;
      case 'Z': m << 1, 0, 0, -1; break;
      default: throw Error("PauliWord: bad letter");
    }
    return m;
  };
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (char ch : letters) {
    ComplexMatrix next(m.rows() * 2, m.cols() * 2);
    Eigen::Matrix2cd s = sigma(ch);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    }
    m = next;
  }
  return kI * m;
}

bool PauliWord::is_real() const {
  int ys = 0;
  for (char ch : letters) ys += (ch == 'Y');
  return ys % 2 == 1;
}

RealMatrix PauliWord::so8_matrix() const {
  if (!is_real()) throw Error("PauliWord: even-Y word is not real");
  return unitary().real();
}

std::vector<PauliWord> odd_y_words() {
  std::vector<PauliWord> words;
  const char alphabet[] = {'I', 'X', 'Y', 'Z'};
  for (char a : alphabet) {
    for (char b : alphabet) {
      for (char c : alphabet) {
        PauliWord w{{a, b, c}};
        if (w.is_real()) words.push_back(w);
      }
    }
  }
  return words;
}

std::vector<PauliTrialityEntry> pauli_triality_table() {
  std::vector<PauliTrialityEntry> table;
  for (const PauliWord &w : odd_y_words()) {
    SkewSym8 img = tau_apply(SkewSym8::from_matrix(w.so8_matrix()));
    int best = -1;
    for (int k = 0; k < kFBasisSize; ++k) {
      if (std::abs(img.coeffs(k)) > 1e-9) {
        if (best >= 0) throw Error("pauli_triality_table: image not a single f");
        best = k;
      }
    }
    if (best < 0 || std::abs(std::abs(img.coeffs(best)) - 2.0) > 1e-9) {
      throw Error("pauli_triality_table: image is not +-2 f_ji");
    }
    auto [j, i] = kPairs[best];
    table.push_back({w, img.coeffs(best) > 0 ? 1 : -1, j, i});
  }
  return table;
}

RealMatrix triality_group(const RealMatrix &v) {
  if (!is_special_orthogonal(v)) {
    throw NotSpecialOrthogonal("triality_group: input is not in SO(8)");
  }
  const TrialityOperator &op = triality();
  RealMatrix out = RealMatrix::Identity(8, 8);
  for (const GivensFactor &g : givens_factorize(v)) {
    // half-angle forms computed from theta directly, stable near theta = pi
    const double c = std::cos(0.5 * g.theta), s = std::sin(0.5 * g.theta);
    out = out * (c * RealMatrix::Identity(8, 8) + 2.0 * s * op.tau_f[f_index(g.j, g.i)]);
  }
  return out;
}

RealMatrix triality_inverse(const RealMatrix &v) {
  if (!is_special_orthogonal(v)) {
    throw NotSpecialOrthogonal("triality_inverse: input is not in SO(8)");
  }
  const TrialityOperator &op = triality();
  RealMatrix out = RealMatrix::Identity(8, 8);
  for (const GivensFactor &g : givens_factorize(v)) {
    const double c = std::cos(0.5 * g.theta), s = std::sin(0.5 * g.theta);
    out = out * (c * RealMatrix::Identity(8, 8) + 2.0 * s * op.tau2_f[f_index(g.j, g.i)]);
  }
  return out;
}

double trace_form(const SkewSym8 &x, const SkewSym8 &y) {
  return (x.matrix() * y.matrix()).trace();
}

bool root_lattice_membership(const std::array<long, 4> &v) {
  long sum = 0;
  for (long c : v) sum += c;
  return ((sum % 2) + 2) % 2 == 0;
}

bool dual_lattice_membership(const std::array<double, 4> &x, double tol) {
  bool all_int = true, all_half = true;
  for (double c : x) {
    const double r = c - std::floor(c);
    const double dist_int = std::min(r, 1.0 - r);
    const double dist_half = std::abs(r - 0.5);
    if (dist_int > tol) all_int = false;
    if (dist_half > tol) all_half = false;
  }
  return all_int || all_half;
}

// Section 3.1 run-length string: digits are runs of zeros, '+'/'-' are +-1/2.
// Rows follow the f-basis order used here.
const char *const kPrintedTauString =
    "-66-8-4-5-6+1-4+77-4-3+2+55+6-77+2-3+4+88--5+6-5-4+55+4+7+2+67+4+3+2"
    "+77-6+1+4-55-4-88--3+6-77-2+5-4-7+2+55+6-5+4-6+66-8-4+3-6-5+4+55+4-7"
    "-2+8+6+77+2+3-4+88-+6+4-7+2-55+6+5+4+8-4+88+-3-6-77+2+1+66+8-4-5+6+1"
    "+4+77-4+3+2-78-4+3-2+77-6-1+4+8+66-8+4-";

Eigen::Matrix<double, kFBasisSize, kFBasisSize> decode_printed_tau_string() {
  std::vector<double> vals;
  vals.reserve(kFBasisSize * kFBasisSize);
  for (const char *p = kPrintedTauString; *p; ++p) {
    if (*p == '+') {
      vals.push_back(0.5);
    } else if (*p == '-') {
      vals.push_back(-0.5);
    } else if (*p >= '0' && *p <= '9') {
      vals.insert(vals.end(), *p - '0', 0.0);
    } else {
      throw Error("decode_printed_tau_string: bad character");
    }
  }
  if (vals.size() != kFBasisSize * kFBasisSize) {
    throw Error("decode_printed_tau_string: wrong length");
  }
  Eigen::Matrix<double, kFBasisSize, kFBasisSize> m;
  for (int r = 0; r < kFBasisSize; ++r) {
    for (int c = 0; c < kFBasisSize; ++c) m(r, c) = vals[r * kFBasisSize + c];
  }
  return m;
}

}  // namespace trisynth
