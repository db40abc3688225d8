#include "mnqc/internode_gate.hpp"

#include <stdexcept>
#include <vector>

#include "mnqc/gates.hpp"

namespace mnqc::gate {
namespace {

// Subsystem order used throughout the teleportation simulation.
constexpr int kR1 = 0;  // reference for D1
constexpr int kR2 = 1;  // reference for D2
constexpr int kD1 = 2;  // data qubit on node A (control)
constexpr int kD2 = 3;  // data qubit on node B (target)
constexpr int kEA = 4;  // EP half on node A
constexpr int kEB = 5;  // EP half on node B

Matrix z_projector(int outcome) {
  Matrix p = Matrix::Zero(2, 2);
  p(outcome, outcome) = 1.0;
  return p;
}

Matrix x_projector(int outcome) {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  Matrix p(2, 2);
  p << 0.5, 0.5 * sign, 0.5 * sign, 0.5;
  return p;
}

}  // namespace

InternodeGateResult teleported_cx(const DensityMatrix& ep_state, double ep_delivery_time_s,
                                  const NoiseParams& noise) {
  if (ep_state.dim() != 4) throw std::invalid_argument("teleported_cx: EP state must be 2 qubits");
  if (ep_delivery_time_s < 0.0) throw std::invalid_argument("teleported_cx: negative delivery time");
  noise.validate();

  // Choi-state bookkeeping: each data qubit starts maximally entangled with a
  // noiseless reference so the branch sum below is the channel's Choi state.
  const Vector omega = maximally_entangled_vector(2);
  const DensityMatrix pair1 = DensityMatrix::pure(HilbertLayout({2, 2}), omega);  // (R1, D1)
  DensityMatrix state = tensor_product(tensor_product(pair1, pair1), ep_state);
  // (R1, D1, R2, D2, EA, EB) -> (R1, R2, D1, D2, EA, EB)
  state = permute_subsystems(state, {0, 2, 1, 3, 4, 5});

  // The link delivers |Psi+>-targeted pairs; the protocol consumes |Phi+>.
  // The frame flip on EB is a software-relabelled measurement basis, so it is
  // applied noise-free.
  apply_unitary_in_place(state, gates::x(), {kEB});

  // Both nodes run their local CX in the same gate window.
  const QuantumChannel depol2 = depolarizing_channel(noise.depolarizing_prob, 2);
  apply_unitary_in_place(state, gates::cx(), {kD1, kEA});
  state = apply_channel(state, depol2, {kD1, kEA});
  apply_unitary_in_place(state, gates::cx(), {kEB, kD2});
  state = apply_channel(state, depol2, {kEB, kD2});
  const QuantumChannel gate_decay =
      relaxation_dephasing_channel(noise.local_gate_time, noise.t1, noise.t2);
  for (int q : {kD1, kD2, kEA, kEB}) state = apply_channel(state, gate_decay, {q});

  // Measure EA in Z (outcome a -> X on D2) and EB in X (outcome b -> Z on D1),
  // then trace out the consumed EP halves.  Branches are summed unnormalized.
  Matrix choi_sum = Matrix::Zero(16, 16);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      DensityMatrix branch = project(state, z_projector(a), {kEA});
      branch = project(branch, x_projector(b), {kEB});
      if (a == 1) apply_unitary_in_place(branch, gates::x(), {kD2});
      if (b == 1) apply_unitary_in_place(branch, gates::z(), {kD1});
      choi_sum += partial_trace(branch, {kR1, kR2, kD1, kD2}).data();
    }
  }
  DensityMatrix choi(HilbertLayout({2, 2, 2, 2}), choi_sum);
  // Measurement + feedforward occupy a second local gate window.
  for (int q : {2, 3}) choi = apply_channel(choi, gate_decay, {q});

  InternodeGateResult result;
  result.gate_time_s = ep_delivery_time_s + 2.0 * noise.local_gate_time;
  result.process_fidelity = process_fidelity_choi(choi.data(), gates::cx());
  result.average_gate_fidelity = average_gate_fidelity(result.process_fidelity, 4);
  result.choi = std::move(choi);
  result.effective_channel =
      effective_link_channel(result.process_fidelity, result.gate_time_s, noise).pair_channel;
  return result;
}

LinkChannelBundle effective_link_channel(double f_ll, double t_ll, const NoiseParams& noise) {
  if (f_ll < 0.0 || f_ll > 1.0 + 1e-12) {
    throw std::invalid_argument("effective_link_channel: process fidelity outside [0, 1]");
  }
  if (t_ll < 0.0) throw std::invalid_argument("effective_link_channel: negative link time");
  // CX followed by two-qubit depolarizing with p chosen so the composite
  // process fidelity is exactly f_ll: F = 1 - 15 p / 16.
  const double p = std::min(1.0, (1.0 - std::min(f_ll, 1.0)) * 16.0 / 15.0);
  LinkChannelBundle bundle;
  bundle.depolarizing_prob = p;
  const HilbertLayout two_qubits({2, 2});
  bundle.pair_channel =
      compose(depolarizing_channel(p, 2), channel_from_unitary(gates::cx(), two_qubits));
  bundle.spectator_channel = relaxation_dephasing_channel(t_ll, noise.t1, noise.t2);
  return bundle;
}

}  // namespace mnqc::gate
