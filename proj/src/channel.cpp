#include "mnqc/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "mnqc/gates.hpp"

namespace mnqc {

double QuantumChannel::completeness_defect() const {
  const long d = dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const Matrix& k : kraus) acc += k.adjoint() * k;
  return (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

bool QuantumChannel::is_trace_nonincreasing(double tolerance) const {
  const long d = dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const Matrix& k : kraus) acc += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(d, d) - acc, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tolerance;
}

QuantumChannel make_channel(HilbertLayout layout, std::vector<Matrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("make_channel: empty Kraus list");
  const long d = layout.total_dim();
  for (const Matrix& k : kraus)
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("make_channel: Kraus operator dimension mismatch");
  return QuantumChannel{std::move(layout), std::move(kraus)};
}

QuantumChannel channel_from_unitary(const Matrix& u, HilbertLayout layout) {
  return make_channel(std::move(layout), {u});
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (second.layout != first.layout)
    throw std::invalid_argument("compose: channel layouts differ");
  std::vector<Matrix> kraus;
  kraus.reserve(second.kraus.size() * first.kraus.size());
  for (const Matrix& b : second.kraus)
    for (const Matrix& a : first.kraus) kraus.push_back(b * a);
  return QuantumChannel{first.layout, std::move(kraus)};
}

QuantumChannel depolarizing_channel(double p, int n_qubits) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p must be in [0, 1]");
  if (n_qubits < 1) throw std::invalid_argument("depolarizing_channel: n_qubits must be >= 1");
  const long d = 1L << n_qubits;
  const double d2 = static_cast<double>(d) * static_cast<double>(d);
  // rho -> (1-p) rho + p I/d == sum over Pauli strings with weight p/d^2 on
  // every non-identity string and 1 - p + p/d^2 on the identity.
  const Matrix paulis[4] = {gates::i2(), gates::x(), gates::y(), gates::z()};
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d2));
  for (long code = 0; code < static_cast<long>(d2); ++code) {
    Matrix op = Matrix::Identity(1, 1);
    long c = code;
    for (int q = 0; q < n_qubits; ++q) {
      const Matrix& factor = paulis[c % 4];
      c /= 4;
      Matrix next(op.rows() * 2, op.cols() * 2);
      for (long i = 0; i < op.rows(); ++i)
        for (long j = 0; j < op.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = op(i, j) * factor;
      op = std::move(next);
    }
    const double w = (code == 0) ? 1.0 - p + p / d2 : p / d2;
    if (w > 0.0) kraus.push_back(std::sqrt(w) * op);
  }
  return make_channel(HilbertLayout::qubits(n_qubits), std::move(kraus));
}

QuantumChannel relaxation_dephasing_channel(double t, double t1, double t2) {
  if (t < 0.0) throw std::invalid_argument("relaxation_dephasing_channel: negative duration");
  if (t1 <= 0.0 || t2 <= 0.0)
    throw std::invalid_argument("relaxation_dephasing_channel: T1 and T2 must be positive");
  if (t2 > 2.0 * t1 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "relaxation_dephasing_channel: T2 = " << t2 << " exceeds 2*T1 = " << 2.0 * t1;
    throw std::invalid_argument(os.str());
  }
  const double gamma = 1.0 - std::exp(-t / t1);           // |1> population loss
  const double coherence = std::exp(-t / t2);             // off-diagonal factor
  // K0 = diag(1, sqrt((1-gamma)(1-lambda))), K1 = sqrt(gamma)|0><1|,
  // K2 = diag(0, sqrt((1-gamma) lambda)); coherence = sqrt((1-gamma)(1-lambda)).
  const double survive = 1.0 - gamma;                     // exp(-t/T1)
  const double k0_11 = coherence;
  double lambda_term = survive - coherence * coherence;   // (1-gamma) * lambda
  if (lambda_term < 0.0) lambda_term = 0.0;               // guard rounding when T2 == 2*T1
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = k0_11;
  k1(0, 1) = std::sqrt(gamma);
  k2(1, 1) = std::sqrt(lambda_term);
  std::vector<Matrix> kraus{std::move(k0), std::move(k1)};
  if (lambda_term > 0.0) kraus.push_back(std::move(k2));
  return make_channel(HilbertLayout::qubits(1), std::move(kraus));
}

double fidelity_lifetime(double t1, double t2) {
  if (t1 <= 0.0 || t2 <= 0.0) throw std::invalid_argument("fidelity_lifetime: T1, T2 must be > 0");
  return t1 * t2 / (t1 + t2);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& channel,
                            const std::vector<int>& targets) {
  DensityMatrix out = apply_kraus(rho, channel.kraus, targets);
  if (!channel.is_trace_preserving()) out.set_trace_flag(TraceFlag::kSubnormalized);
  return out;
}

Matrix choi_state(const QuantumChannel& channel) {
  const long d = channel.dim();
  const Vector omega = maximally_entangled_vector(static_cast<int>(d));
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (const Matrix& k : channel.kraus) {
    // (I (x) K)|Omega> has entries |i>(x)K|i>/sqrt(d).
    Vector v = Vector::Zero(d * d);
    for (long i = 0; i < d; ++i)
      v.segment(i * d, d) += k.col(i) / std::sqrt(static_cast<double>(d));
    choi += v * v.adjoint();
  }
  return choi;
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, double cutoff) {
  const long d2 = choi.rows();
  const long d = static_cast<long>(std::llround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2 || choi.cols() != d2)
    throw std::invalid_argument("kraus_from_choi: matrix must be d^2 x d^2");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (choi + choi.adjoint()));
  std::vector<Matrix> kraus;
  for (long m = 0; m < d2; ++m) {
    const double lam = es.eigenvalues()(m);
    if (lam < cutoff) continue;
    const Vector v = es.eigenvectors().col(m);
    // v indexes (reference i, output o); K(o, i) = sqrt(d * lam) * v(i*d + o).
    Matrix k(d, d);
    for (long i = 0; i < d; ++i)
      for (long o = 0; o < d; ++o) k(o, i) = std::sqrt(lam * static_cast<double>(d)) * v(i * d + o);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw std::runtime_error("kraus_from_choi: no eigenvalue above cutoff");
  return kraus;
}

double process_fidelity_choi(const Matrix& choi, const Matrix& ideal_unitary) {
  const long d = ideal_unitary.rows();
  if (ideal_unitary.cols() != d) throw std::invalid_argument("process_fidelity: U must be square");
  if (choi.rows() != d * d) throw std::invalid_argument("process_fidelity: Choi/U dimension mismatch");
  Vector phi = Vector::Zero(d * d);
  for (long i = 0; i < d; ++i)
    phi.segment(i * d, d) += ideal_unitary.col(i) / std::sqrt(static_cast<double>(d));
  return (phi.adjoint() * choi * phi)(0, 0).real();
}

double process_fidelity(const QuantumChannel& channel, const Matrix& ideal_unitary) {
  if (channel.dim() != ideal_unitary.rows())
    throw std::invalid_argument("process_fidelity: channel/U dimension mismatch");
  // F = (1/d^2) sum_k |tr(U^dagger K_k)|^2, equivalent to the Choi overlap.
  const double d = static_cast<double>(channel.dim());
  double acc = 0.0;
  for (const Matrix& k : channel.kraus) acc += std::norm((ideal_unitary.adjoint() * k).trace());
  return acc / (d * d);
}

double average_gate_fidelity(double process_fid, int dim) {
  return (dim * process_fid + 1.0) / (dim + 1.0);
}

}  // namespace mnqc
