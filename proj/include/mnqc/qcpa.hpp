#pragma once

namespace mnqc::qcpa {

// Inputs of the probabilistic-error-cancellation vs circuit-knitting
// comparison for a single internode gate class.
struct QcpaQuery {
  int d = 4;             // gate dimension (4 = two-qubit)
  double f_p = 1.0;      // process fidelity of the internode gate
  double t_ll_s = 0.0;   // internode gate latency
  double t_star_s = 5e-4;  // effective fidelity lifetime T1 T2 / (T1 + T2)
  int n_q = 0;           // spectator qubit count
  double k = 0.0;        // internode gate count in the circuit
};

// PEC sampling-cost base per gate:
//   gamma = ((d^2 F_p - 1)/(d^2 - 1))^(-4 (d^2 - 1)/d^2).
// Throws std::domain_error when F_p <= 1/d^2.
double gamma_pec(int d, double f_p);
double log10_gamma_pec(int d, double f_p);

// Per-internode-gate gamma including spectator decoherence, evaluated in log
// space: gamma_pec(4, F_LL) * gamma_pec(2, e^{-T_LL/T*})^{N_q}.
double log10_pec_link_gamma(const QcpaQuery& query);
double pec_link_gamma(const QcpaQuery& query);

enum class KnittingBound { kUpper, kLower };
double knitting_gamma(KnittingBound bound);  // 9 (upper) or 4 (lower)

// log10 of the circuit count gamma^k; never materializes the power.
double sampling_overhead_log10(double gamma, double k);

struct CrossoverResult {
  bool found = false;
  double infidelity = 0.0;  // 1 - F_LL where pec_link_gamma == knitting_gamma
};

// Bisection on link infidelity; `found == false` when the PEC cost already
// exceeds the knitting bound at perfect link fidelity (or never reaches it
// inside the domain).
CrossoverResult crossover_infidelity(KnittingBound bound, double t_ll_s, double t_star_s, int n_q);

}  // namespace mnqc::qcpa
