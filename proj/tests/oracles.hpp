#pragma once

// Self-contained dense linear-algebra helpers for the test suite.  Everything
// here re-derives tensor structure with plain index loops and its own gate
// constants, so library results are checked against a second, independent
// implementation rather than against themselves.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Tensor algebra by explicit index loops
// ---------------------------------------------------------------------------

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

// Embeds a k-qubit operator onto `targets` (first target = most significant
// operator qubit) in an n-qubit register whose qubit 0 is most significant.
inline Matrix embed(const Matrix& op, int n_qubits, const std::vector<int>& targets) {
  const long dim = 1L << n_qubits;
  const int k = static_cast<int>(targets.size());
  auto target_bits = [&](long x) {
    long t = 0;
    for (int j = 0; j < k; ++j) t = (t << 1) | ((x >> (n_qubits - 1 - targets[j])) & 1);
    return t;
  };
  auto rest_bits = [&](long x) {
    long r = 0;
    for (int q = 0; q < n_qubits; ++q) {
      if (std::find(targets.begin(), targets.end(), q) != targets.end()) continue;
      r = (r << 1) | ((x >> (n_qubits - 1 - q)) & 1);
    }
    return r;
  };
  Matrix out = Matrix::Zero(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c)
      if (rest_bits(r) == rest_bits(c)) out(r, c) = op(target_bits(r), target_bits(c));
  return out;
}

// Traces out the listed qubits of an n-qubit register; kept qubits stay in
// ascending order (lists must be ascending).
inline Matrix trace_out(const Matrix& rho, int n_qubits, const std::vector<int>& discard) {
  std::vector<int> keep;
  for (int q = 0; q < n_qubits; ++q)
    if (std::find(discard.begin(), discard.end(), q) == discard.end()) keep.push_back(q);
  const int nk = static_cast<int>(keep.size());
  const int nd = static_cast<int>(discard.size());
  const long dk = 1L << nk;
  const long dd = 1L << nd;
  auto full_index = [&](long kept_idx, long disc_idx) {
    long idx = 0;
    int ki = 0, di = 0;
    for (int q = 0; q < n_qubits; ++q) {
      long bit;
      if (std::find(discard.begin(), discard.end(), q) != discard.end()) {
        bit = (disc_idx >> (nd - 1 - di)) & 1;
        ++di;
      } else {
        bit = (kept_idx >> (nk - 1 - ki)) & 1;
        ++ki;
      }
      idx = (idx << 1) | bit;
    }
    return idx;
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (long d = 0; d < dd; ++d) sum += rho(full_index(r, d), full_index(c, d));
      out(r, c) = sum;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Gate constants
// ---------------------------------------------------------------------------

inline Matrix pauli(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

inline Matrix rx_gate(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix m(2, 2);
  m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return m;
}

// 0: phi+, 1: phi-, 2: psi+, 3: psi-.
inline Vector bell_vector(int which) {
  Vector v = Vector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: v(0) = r; v(3) = r; break;
    case 1: v(0) = r; v(3) = -r; break;
    case 2: v(1) = r; v(2) = r; break;
    default: v(1) = r; v(2) = -r; break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Random inputs (std::mt19937_64, independent of the library generator)
// ---------------------------------------------------------------------------

inline Matrix random_ginibre(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(gen), normal(gen));
  return g;
}

inline Matrix random_density(int dim, std::mt19937_64& gen) {
  const Matrix g = random_ginibre(dim, dim, gen);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

inline Vector random_state_vector(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(gen), normal(gen));
  v /= v.norm();
  return v;
}

inline Matrix random_unitary(int dim, std::mt19937_64& gen) {
  Eigen::HouseholderQR<Matrix> qr(random_ginibre(dim, dim, gen));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

// Random Bell-diagonal two-qubit state.
inline Matrix random_bell_diagonal(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double w[4];
  double total = 0.0;
  for (double& x : w) {
    x = uni(gen);
    total += x;
  }
  Matrix rho = Matrix::Zero(4, 4);
  for (int b = 0; b < 4; ++b) {
    const Vector v = bell_vector(b);
    rho += (w[b] / total) * (v * v.adjoint());
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Entanglement purification round (explicit 16x16 construction)
// ---------------------------------------------------------------------------

// Complete two-qubit depolarizing on qubits (qa, qb) embedded in n qubits:
// (1-p) rho + p (I/4 (x) rest), realised as the 16-Pauli average.
inline Matrix depolarize_two_qubits(const Matrix& rho, int n_qubits, int qa, int qb, double p) {
  Matrix mixed = Matrix::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix e = embed(kron(pauli(i), pauli(j)), n_qubits, {qa, qb});
      mixed += e * rho * e.adjoint();
    }
  return (1.0 - p) * rho + (p / 16.0) * mixed;
}

struct PurifyOracleResult {
  Matrix state;    // kept pair, renormalized
  double success;  // coincidence probability
};

// One purification round on the joint (A1, B1, A2, B2) register: +pi/2 X
// rotations on the A-side qubits and -pi/2 on the B side, a CNOT from kept to
// sacrificial on each side (each followed by two-qubit depolarizing with
// probability p_cnot), then the coincident computational outcomes (00, 11) of
// the sacrificial pair are kept and traced out.
inline PurifyOracleResult purify_round_oracle(const Matrix& kept_pair, const Matrix& sac_pair,
                                              double p_cnot) {
  Matrix rho = kron(kept_pair, sac_pair);
  const Matrix rot =
      kron_all({rx_gate(kPi / 2), rx_gate(-kPi / 2), rx_gate(kPi / 2), rx_gate(-kPi / 2)});
  rho = rot * rho * rot.adjoint();

  Matrix u = embed(cnot(), 4, {0, 2});
  rho = u * rho * u.adjoint();
  rho = depolarize_two_qubits(rho, 4, 0, 2, p_cnot);
  u = embed(cnot(), 4, {1, 3});
  rho = u * rho * u.adjoint();
  rho = depolarize_two_qubits(rho, 4, 1, 3, p_cnot);

  Matrix branch_sum = Matrix::Zero(16, 16);
  for (int outcome : {0, 3}) {
    Matrix proj = Matrix::Zero(4, 4);
    proj(outcome, outcome) = 1.0;
    const Matrix p4 = embed(proj, 4, {2, 3});
    branch_sum += p4 * rho * p4.adjoint();
  }
  PurifyOracleResult out;
  out.success = branch_sum.trace().real();
  out.state = trace_out(branch_sum, 4, {2, 3}) / out.success;
  return out;
}

}  // namespace oracle
