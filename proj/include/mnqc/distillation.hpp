#pragma once

#include <vector>

#include "mnqc/density_matrix.hpp"
#include "mnqc/noise.hpp"

namespace mnqc::distill {

struct DistillationConfig {
  int rounds = 0;                 // n >= 0 nested purification rounds
  double raw_pair_time_s = 1e-6;  // tau = 1/R from the physical layer
  NoiseParams noise;
  bool ideal_memory = false;      // suppresses decoherence during waits and t_p

  void validate() const;
};

// One purification round consuming two pairs.
struct RoundOutput {
  DensityMatrix state;   // kept two-qubit pair, renormalized
  double success_prob;   // coincidence probability of the sacrificial pair
};

struct DistillationResult {
  DensityMatrix state;              // rho_(n)
  double total_time_s = 0.0;        // t_n from the recurrence
  double success_prob = 1.0;        // P_n product formula
  std::vector<double> per_round_p;  // p_j, j = 1..n
  double fidelity = 0.0;            // <Psi+| rho_(n) |Psi+>
};

// Analytic BBPSSW fidelity update for Werner-like pairs.
double bbpssw_update(double fidelity);

// One DEJMPS round on the 4-qubit joint state: each side rotates into the
// Bell-diagonal basis (+pi/2 X rotation on node-A qubits, -pi/2 on node-B),
// applies its local CNOT from the kept pair onto the sacrificial pair (each
// CNOT followed by two-qubit depolarizing noise), and the sacrificial pair is
// measured in the computational basis.  Success keeps the coincident-outcome
// branches (00 and 11) summed; the kept pair then idles for the purification
// step time t_p unless ideal_memory.  Pair layout: (A1, B1) kept, (A2, B2)
// sacrificed.
RoundOutput dejmps_round(const DensityMatrix& pair1, const DensityMatrix& pair2,
                         const NoiseParams& noise, bool ideal_memory = false);

// Nested recurrence: rho_(n) = E(t_p)[ P[ E(2^{n-1} tau)[rho_(n-1)] x rho_(n-1) ]],
// t_n = 2^{n-1} tau + t_{n-1} + t_p with t_0 = tau.
DistillationResult nested_distillation(const DensityMatrix& raw_pair,
                                       const DistillationConfig& config);

// P_n = prod_j p_j^{2^{j-1}} (as published; per-round values are retained so
// the alternative exponent ordering can be audited).
double single_shot_success(const std::vector<double>& per_round_p);

// Closed form of the timing recurrence: t_n = 2^n tau + n t_p.
double distillation_time(int rounds, double raw_pair_time_s, double step_time_s);

struct FidelityGainPoint {
  double f0;
  double p_cnot;
  double delta_f;  // one-round fidelity gain on Werner-F0 inputs
};

// One-round gain table over a Werner-fidelity grid for each CNOT
// depolarizing setting; p_cnot = 0 rows give the ideal reference curve.
std::vector<FidelityGainPoint> fidelity_gain_study(const std::vector<double>& f0_grid,
                                                   const std::vector<double>& p_cnot_list,
                                                   const NoiseParams& noise);

}  // namespace mnqc::distill
