#include "mnqc/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace mnqc {
namespace gates {

namespace {
const Complex kI(0.0, 1.0);
}

Matrix i2() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << Complex(0, 0), -kI, kI, Complex(0, 0);
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix h() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Matrix s() { return phase(M_PI / 2.0); }
Matrix sdg() { return phase(-M_PI / 2.0); }
Matrix t() { return phase(M_PI / 4.0); }
Matrix tdg() { return phase(-M_PI / 4.0); }

Matrix rx(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return m;
}

Matrix ry(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  m << c, -s, s, c;
  return m;
}

Matrix rz(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-kI * (theta / 2.0));
  m(1, 1) = std::exp(kI * (theta / 2.0));
  return m;
}

Matrix phase(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(kI * theta);
  return m;
}

Matrix cx() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Matrix cz() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

Matrix cp(double theta) {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = std::exp(kI * theta);
  return m;
}

Matrix swap2() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

}  // namespace gates

std::string to_string(BellLabel label) {
  switch (label) {
    case BellLabel::kPhiPlus: return "phi_plus";
    case BellLabel::kPhiMinus: return "phi_minus";
    case BellLabel::kPsiPlus: return "psi_plus";
    case BellLabel::kPsiMinus: return "psi_minus";
  }
  throw std::logic_error("unreachable BellLabel");
}

BellLabel bell_label_from_string(const std::string& name) {
  if (name == "phi_plus") return BellLabel::kPhiPlus;
  if (name == "phi_minus") return BellLabel::kPhiMinus;
  if (name == "psi_plus") return BellLabel::kPsiPlus;
  if (name == "psi_minus") return BellLabel::kPsiMinus;
  throw std::invalid_argument("unknown Bell label '" + name +
                              "'; expected phi_plus, phi_minus, psi_plus or psi_minus");
}

Vector bell_vector(BellLabel label) {
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (label) {
    case BellLabel::kPhiPlus: v(0) = s; v(3) = s; break;
    case BellLabel::kPhiMinus: v(0) = s; v(3) = -s; break;
    case BellLabel::kPsiPlus: v(1) = s; v(2) = s; break;
    case BellLabel::kPsiMinus: v(1) = s; v(2) = -s; break;
  }
  return v;
}

DensityMatrix bell_state(BellLabel label) {
  return DensityMatrix::pure(HilbertLayout::qubits(2), bell_vector(label));
}

double bell_fidelity(const DensityMatrix& rho, BellLabel target) {
  if (rho.dim() != 4) throw std::invalid_argument("bell_fidelity: state must be two qubits");
  return state_fidelity(rho, bell_vector(target));
}

DensityMatrix werner_state(double fidelity, BellLabel target) {
  if (fidelity < 0.0 || fidelity > 1.0)
    throw std::invalid_argument("werner_state: fidelity must lie in [0, 1]");
  Matrix m = Matrix::Zero(4, 4);
  for (BellLabel l : {BellLabel::kPhiPlus, BellLabel::kPhiMinus, BellLabel::kPsiPlus,
                      BellLabel::kPsiMinus}) {
    const double w = (l == target) ? fidelity : (1.0 - fidelity) / 3.0;
    const Vector v = bell_vector(l);
    m += w * (v * v.adjoint());
  }
  return DensityMatrix(HilbertLayout::qubits(2), std::move(m));
}

Vector maximally_entangled_vector(int d) {
  if (d < 1) throw std::invalid_argument("maximally_entangled_vector: d must be >= 1");
  Vector v = Vector::Zero(static_cast<long>(d) * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(static_cast<long>(i) * d + i) = a;
  return v;
}

}  // namespace mnqc
