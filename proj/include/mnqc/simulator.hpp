#pragma once

#include <vector>

#include "mnqc/circuit.hpp"
#include "mnqc/density_matrix.hpp"
#include "mnqc/noise.hpp"

namespace mnqc::bench {

// Depolarizing-match abstraction of the teleported internode CX: the gate is
// ideal-CX + two-qubit depolarizing with process fidelity f_ll, and every
// spectator qubit decoheres for the average latency t_ll.
struct LinkModel {
  double f_ll = 1.0;
  double t_ll = 0.0;
};

// Full density-matrix execution of a routed circuit in the layered timing
// model: every local layer applies its gates (unitary + depolarizing) and
// then relaxation/dephasing for the layer duration on all qubits; internode
// layers apply the link model.
DensityMatrix simulate_density(const Circuit& routed, const NoiseParams& noise,
                               const LinkModel& link);

// Noiseless statevector reference from |0...0>.
Vector simulate_statevector(const Circuit& circuit);

// Computational-basis probabilities (diagonal, clipped at zero).
std::vector<double> measurement_distribution(const DensityMatrix& rho);

// Marginal over the kept qubits; keep[0] is the most significant output bit.
std::vector<double> marginal_distribution(const std::vector<double>& probs, int n_qubits,
                                          const std::vector<int>& keep);

// In-place noise primitives used by the executor (exposed for testing against
// the generic channel machinery).
void decohere_subset_in_place(Matrix& rho, int n_qubits, const std::vector<int>& qubits, double t,
                              double t1, double t2);
void depolarize_in_place(Matrix& rho, int n_qubits, const std::vector<int>& targets, double p);

}  // namespace mnqc::bench
