#pragma once

#include <string>

#include "mnqc/density_matrix.hpp"

namespace mnqc {

// Standard gate matrices in the computational basis.  Two-qubit gates are
// ordered (control, target) with the control as the most significant factor.
namespace gates {

Matrix i2();
Matrix x();
Matrix y();
Matrix z();
Matrix h();
Matrix s();
Matrix sdg();
Matrix t();
Matrix tdg();
Matrix rx(double theta);
Matrix ry(double theta);
Matrix rz(double theta);
Matrix phase(double theta);  // diag(1, e^{i theta})
Matrix cx();
Matrix cz();
Matrix cp(double theta);
Matrix swap2();

}  // namespace gates

// Bell basis on two qubits: phi_pm = (|00> +- |11>)/sqrt(2),
// psi_pm = (|01> +- |10>)/sqrt(2).
enum class BellLabel { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

std::string to_string(BellLabel label);
BellLabel bell_label_from_string(const std::string& name);
Vector bell_vector(BellLabel label);
DensityMatrix bell_state(BellLabel label);

// <B|rho|B> for a two-qubit state.
double bell_fidelity(const DensityMatrix& rho, BellLabel target);

// Werner-like mixture: f on the target Bell state, (1-f)/3 on each other one.
DensityMatrix werner_state(double fidelity, BellLabel target);

// Maximally entangled ket sum_i |i>|i> / sqrt(d) on (reference, system).
Vector maximally_entangled_vector(int d);

}  // namespace mnqc
