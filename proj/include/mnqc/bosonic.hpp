#pragma once

#include "mnqc/channel.hpp"
#include "mnqc/density_matrix.hpp"

namespace mnqc {

// Single-mode thermal state with mean occupation n_bar on a d_f-level Fock
// space, renormalized over the truncation.
DensityMatrix thermal_state(double n_bar, int d_f);

// Weight of a thermal distribution at or above Fock level `level`
// (untruncated geometric tail).
double thermal_tail_weight(double n_bar, int level);

Matrix annihilation_operator(int d_f);

// Two-mode beamsplitter exp(theta (a^dagger b - a b^dagger)) with power
// transmission T = cos^2(theta) on a (d_f x d_f) truncated space, mode a most
// significant.  Exactly unitary and total-photon-number conserving on the
// truncated space.  Convention: U|1,0> = cos(theta)|1,0> - sin(theta)|0,1>,
// U|0,1> = sin(theta)|1,0> + cos(theta)|0,1>.
Matrix beamsplitter_unitary(double transmission, int d_f);

// Single-mode channel whose Kraus operators are "ladder" matrices: the j-th
// operator shifts Fock index by j (down for loss, up for amplification) and
// scales by a per-level diagonal.  K_j: |n + j> -> diag(j)[n] |n> for loss
// (shift -j applied to the ket index), |n> -> diag(j)[n] |n + j> for gain.
struct LadderChannel {
  int dim = 0;
  bool raises = false;                     // false: photon loss, true: photon gain
  std::vector<Eigen::VectorXd> diagonals;  // diagonals[j] has length dim - j
};

// Pure attenuation with power transmission eta (beamsplitter to a vacuum
// environment, environment traced out).
LadderChannel pure_loss_channel(double eta, int d_f);

// Quantum-limited phase-insensitive amplifier with gain G >= 1.
LadderChannel amplifier_channel(double gain, int d_f);

// Thermal attenuation (beamsplitter with transmission eta whose second input
// port carries a thermal state of mean occupation n_bar, environment traced
// out), decomposed exactly as amplifier(G) after pure_loss(eta/G) with
// G = 1 + (1 - eta) n_bar.  Returned in application order: first, then second.
std::pair<LadderChannel, LadderChannel> thermal_loss_channels(double eta, double n_bar, int d_f);

// Applies a ladder channel to the *last* subsystem of `rho` (which must have
// dimension channel.dim).  Runs in O(front^2 d_f^3) elementwise work instead
// of generic Kraus embedding, which is what makes large Fock truncations
// affordable.
DensityMatrix apply_ladder_channel(const DensityMatrix& rho, const LadderChannel& channel);

// Dense Kraus representation (for cross-validation at small truncations).
QuantumChannel to_quantum_channel(const LadderChannel& channel);

}  // namespace mnqc
