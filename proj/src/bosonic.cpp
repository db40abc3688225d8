#include "mnqc/bosonic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mnqc {
namespace {

// log of the binomial coefficient C(n, k).
double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Efficiencies arrive from expressions like 4C/(1+C)^2 whose exact value sits
// on the boundary of [0, 1]; absorb the last-ulp overshoot instead of
// rejecting it.
double clamp_unit_interval(double x, const char* what) {
  constexpr double kSlack = 1e-9;
  if (x < -kSlack || x > 1.0 + kSlack) {
    std::ostringstream os;
    os << what << " must be in [0, 1], got " << x;
    throw std::invalid_argument(os.str());
  }
  return std::min(1.0, std::max(0.0, x));
}

}  // namespace

DensityMatrix thermal_state(double n_bar, int d_f) {
  if (n_bar < 0.0) throw std::invalid_argument("thermal_state: n_bar must be >= 0");
  if (d_f < 1) throw std::invalid_argument("thermal_state: d_f must be >= 1");
  Eigen::VectorXd p(d_f);
  if (n_bar == 0.0) {
    p.setZero();
    p(0) = 1.0;
  } else {
    const double r = n_bar / (1.0 + n_bar);
    for (int n = 0; n < d_f; ++n) p(n) = std::pow(r, n);
    p /= p.sum();
  }
  Matrix m = Matrix::Zero(d_f, d_f);
  for (int n = 0; n < d_f; ++n) m(n, n) = p(n);
  return DensityMatrix(HilbertLayout{d_f}, std::move(m));
}

double thermal_tail_weight(double n_bar, int level) {
  if (n_bar <= 0.0) return level <= 0 ? 1.0 : 0.0;
  const double r = n_bar / (1.0 + n_bar);
  // sum_{n >= level} (1-r) r^n = r^level.
  return std::pow(r, level);
}

Matrix annihilation_operator(int d_f) {
  if (d_f < 1) throw std::invalid_argument("annihilation_operator: d_f must be >= 1");
  Matrix a = Matrix::Zero(d_f, d_f);
  for (int n = 1; n < d_f; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix beamsplitter_unitary(double transmission, int d_f) {
  transmission = clamp_unit_interval(transmission, "beamsplitter_unitary: transmission");
  if (d_f < 1) throw std::invalid_argument("beamsplitter_unitary: d_f must be >= 1");
  const double theta = std::acos(std::sqrt(transmission));
  const Matrix a = annihilation_operator(d_f);
  const Matrix id = Matrix::Identity(d_f, d_f);
  Matrix a_full(d_f * d_f, d_f * d_f), b_full(d_f * d_f, d_f * d_f);
  // Mode a is the most significant factor.
  for (int i = 0; i < d_f; ++i)
    for (int j = 0; j < d_f; ++j) {
      a_full.block(i * d_f, j * d_f, d_f, d_f) = a(i, j) * id;
      b_full.block(i * d_f, j * d_f, d_f, d_f) = id(i, j) * a;
    }
  // U = exp(theta (a^dag b - a b^dag)) = exp(-i H), H = i theta (a^dag b - a b^dag).
  const Matrix k = a_full.adjoint() * b_full - a_full * b_full.adjoint();
  const Matrix h = Complex(0.0, 1.0) * theta * k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Matrix u = es.eigenvectors();
  Vector phases(h.rows());
  for (long m = 0; m < h.rows(); ++m)
    phases(m) = std::exp(Complex(0.0, -es.eigenvalues()(m)));
  return u * phases.asDiagonal() * u.adjoint();
}

LadderChannel pure_loss_channel(double eta, int d_f) {
  eta = clamp_unit_interval(eta, "pure_loss_channel: eta");
  if (d_f < 1) throw std::invalid_argument("pure_loss_channel: d_f must be >= 1");
  LadderChannel ch;
  ch.dim = d_f;
  ch.raises = false;
  if (eta == 1.0) {
    ch.diagonals.push_back(Eigen::VectorXd::Ones(d_f));
    return ch;
  }
  const double log_eta = (eta > 0.0) ? std::log(eta) : 0.0;
  const double log_loss = std::log(1.0 - eta);
  for (int j = 0; j < d_f; ++j) {
    Eigen::VectorXd diag(d_f - j);
    for (int m = 0; m + j < d_f; ++m) {
      // K_j maps |m + j> -> |m> with amplitude sqrt(C(m+j, j) eta^m (1-eta)^j).
      if (eta == 0.0 && m > 0) {
        diag(m) = 0.0;
        continue;
      }
      const double log_amp2 = log_binomial(m + j, j) + m * log_eta + j * log_loss;
      diag(m) = std::exp(0.5 * log_amp2);
    }
    ch.diagonals.push_back(std::move(diag));
  }
  return ch;
}

LadderChannel amplifier_channel(double gain, int d_f) {
  if (gain >= 1.0 - 1e-9) gain = std::max(gain, 1.0);
  if (gain < 1.0) throw std::invalid_argument("amplifier_channel: gain must be >= 1");
  if (d_f < 1) throw std::invalid_argument("amplifier_channel: d_f must be >= 1");
  LadderChannel ch;
  ch.dim = d_f;
  ch.raises = true;
  if (gain == 1.0) {
    ch.diagonals.push_back(Eigen::VectorXd::Ones(d_f));
    return ch;
  }
  const double mu = 1.0 - 1.0 / gain;
  const double log_mu = std::log(mu);
  const double log_gain = std::log(gain);
  for (int j = 0; j < d_f; ++j) {
    Eigen::VectorXd diag(d_f - j);
    for (int n = 0; n + j < d_f; ++n) {
      // B_j maps |n> -> |n + j> with amplitude sqrt(C(n+j, j) mu^j / G^{n+1}).
      const double log_amp2 = log_binomial(n + j, j) + j * log_mu - (n + 1) * log_gain;
      diag(n) = std::exp(0.5 * log_amp2);
    }
    ch.diagonals.push_back(std::move(diag));
  }
  return ch;
}

std::pair<LadderChannel, LadderChannel> thermal_loss_channels(double eta, double n_bar, int d_f) {
  eta = clamp_unit_interval(eta, "thermal_loss_channels: eta");
  if (n_bar < 0.0) throw std::invalid_argument("thermal_loss_channels: n_bar must be >= 0");
  const double gain = 1.0 + (1.0 - eta) * n_bar;
  return {pure_loss_channel(eta / gain, d_f), amplifier_channel(gain, d_f)};
}

DensityMatrix apply_ladder_channel(const DensityMatrix& rho, const LadderChannel& channel) {
  const int k = rho.layout().subsystem_count();
  if (k < 1 || rho.layout().dim(k - 1) != channel.dim)
    throw std::invalid_argument("apply_ladder_channel: last subsystem must match channel dim");
  const long d_f = channel.dim;
  const long front = rho.dim() / d_f;
  const Matrix& in = rho.data();
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (long fc = 0; fc < front; ++fc) {
    for (long fr = 0; fr < front; ++fr) {
      const long r0 = fr * d_f, c0 = fc * d_f;
      for (std::size_t j = 0; j < channel.diagonals.size(); ++j) {
        const Eigen::VectorXd& d = channel.diagonals[j];
        const long m = d.size();
        const long shift = static_cast<long>(j);
        if (!channel.raises) {
          // out[a, b] += d[a] d[b] in[a + j, b + j]
          for (long b = 0; b < m; ++b) {
            const double db = d(b);
            if (db == 0.0) continue;
            const Complex* src = &in(r0 + shift, c0 + shift + b);
            Complex* dst = &out(r0, c0 + b);
            for (long a = 0; a < m; ++a) dst[a] += d(a) * db * src[a];
          }
        } else {
          // out[a + j, b + j] += d[a] d[b] in[a, b]
          for (long b = 0; b < m; ++b) {
            const double db = d(b);
            if (db == 0.0) continue;
            const Complex* src = &in(r0, c0 + b);
            Complex* dst = &out(r0 + shift, c0 + shift + b);
            for (long a = 0; a < m; ++a) dst[a] += d(a) * db * src[a];
          }
        }
      }
    }
  }
  // Amplification leaks weight above the truncation, so the result may be
  // slightly trace-deficient; convergence in d_f is checked by callers.
  const TraceFlag flag = channel.raises ? TraceFlag::kSubnormalized : rho.trace_flag();
  return DensityMatrix(rho.layout(), std::move(out), flag);
}

QuantumChannel to_quantum_channel(const LadderChannel& channel) {
  std::vector<Matrix> kraus;
  for (std::size_t j = 0; j < channel.diagonals.size(); ++j) {
    const Eigen::VectorXd& d = channel.diagonals[j];
    Matrix k = Matrix::Zero(channel.dim, channel.dim);
    for (long m = 0; m < d.size(); ++m) {
      if (!channel.raises)
        k(m, m + static_cast<long>(j)) = d(m);
      else
        k(m + static_cast<long>(j), m) = d(m);
    }
    kraus.push_back(std::move(k));
  }
  return QuantumChannel{HilbertLayout{channel.dim}, std::move(kraus)};
}

}  // namespace mnqc
