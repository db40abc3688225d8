#pragma once

#include <vector>

#include "mnqc/density_matrix.hpp"

namespace mnqc {

// Completely positive map given by a Kraus operator-sum on a (small) target
// space.  Channels used inside simulators act on one or two subsystems; the
// density matrix machinery embeds them into the full space.
struct QuantumChannel {
  HilbertLayout layout;        // input layout == output layout
  std::vector<Matrix> kraus;

  long dim() const { return layout.total_dim(); }

  // max |sum_j K_j^dagger K_j - I| element.
  double completeness_defect() const;
  bool is_trace_preserving(double tolerance = tol::kKrausCompleteness) const {
    return completeness_defect() <= tolerance;
  }
  // True when sum K^dagger K <= I (allows trace-decreasing conditional maps).
  bool is_trace_nonincreasing(double tolerance = tol::kKrausCompleteness) const;
};

QuantumChannel make_channel(HilbertLayout layout, std::vector<Matrix> kraus);
QuantumChannel channel_from_unitary(const Matrix& u, HilbertLayout layout);

// second after first: K = {B_j A_i}.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);

// Uniform depolarizing on n qubits: rho -> (1-p) rho + p I/2^n, expressed as a
// Pauli-string Kraus set.
QuantumChannel depolarizing_channel(double p, int n_qubits);

// Combined amplitude damping + pure dephasing for duration t with relaxation
// time T1 and coherence time T2 (T2 <= 2*T1).  Population decays as
// exp(-t/T1) and coherence as exp(-t/T2); the composition over consecutive
// durations equals the channel of the summed duration.
QuantumChannel relaxation_dephasing_channel(double t, double t1, double t2);

// Effective fidelity lifetime 1/T* = 1/T1 + 1/T2.
double fidelity_lifetime(double t1, double t2);

// Applies a channel to the listed subsystems of a larger state.
DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& channel,
                            const std::vector<int>& targets);

// Normalized Choi state (I (x) E)(|Omega><Omega|) on (reference, output),
// reference first; dimension d^2 x d^2.
Matrix choi_state(const QuantumChannel& channel);

// Recovers a Kraus set from a normalized Choi state; eigenvalues below
// `cutoff` are dropped.
std::vector<Matrix> kraus_from_choi(const Matrix& choi, double cutoff = 1e-12);

// Process fidelity of a channel against an ideal unitary:
//   F = <Phi_U| rho_choi |Phi_U>,  |Phi_U> = (I (x) U)|Omega>.
double process_fidelity(const QuantumChannel& channel, const Matrix& ideal_unitary);
double process_fidelity_choi(const Matrix& choi, const Matrix& ideal_unitary);

// Average gate fidelity from process fidelity: (d F_pro + 1)/(d + 1).
double average_gate_fidelity(double process_fid, int dim);

}  // namespace mnqc
