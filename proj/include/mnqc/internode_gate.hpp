#pragma once

#include "mnqc/channel.hpp"
#include "mnqc/density_matrix.hpp"
#include "mnqc/noise.hpp"

namespace mnqc::gate {

struct InternodeGateResult {
  double gate_time_s = 0.0;        // T_LL = EP delivery time + local circuit time
  double process_fidelity = 0.0;   // F_LL vs the ideal CX
  double average_gate_fidelity = 0.0;
  DensityMatrix choi;              // 4-qubit Choi state (R1, R2, D1, D2)
  QuantumChannel effective_channel;  // ideal CX + matched two-qubit depolarizing
};

// Simulates gate teleportation of CX(D1 -> D2) across the link: one shared EP
// (halves EA on node A, EB on node B), a local CX on each side with
// depolarizing error and a local_gate_time decoherence window, measurement of
// both EP halves (Z on EA, X on EB) and classically-conditioned Pauli
// corrections, with a second local_gate_time window for the
// measurement/feedforward.  The data qubits are tracked through reference
// ancillas so the result is the full Choi state of the effective two-qubit
// channel.  `ep_delivery_time_s` is the average time to deliver the EP
// (t_n / P_n from distillation); it contributes to T_LL but the delivered
// pair itself arrives fresh.
InternodeGateResult teleported_cx(const DensityMatrix& ep_state, double ep_delivery_time_s,
                                  const NoiseParams& noise);

struct LinkChannelBundle {
  QuantumChannel pair_channel;       // ideal CX followed by two-qubit depolarizing
  QuantumChannel spectator_channel;  // relaxation/dephasing over T_LL per spectator
  double depolarizing_prob = 0.0;    // p matched so process fidelity equals F_LL
};

// Depolarizing-match abstraction used inside 10-qubit scans: the internode
// gate becomes an ideal CX plus two-qubit depolarizing with process fidelity
// F_LL, while every spectator qubit decoheres for T_LL.
LinkChannelBundle effective_link_channel(double f_ll, double t_ll, const NoiseParams& noise);

}  // namespace mnqc::gate
