#pragma once

#include <vector>

#include "mnqc/circuit.hpp"
#include "mnqc/noise.hpp"

namespace mnqc::dqpe {

// Default single-ancilla-register QPE instance used by the link-error study:
// a 10-qubit device estimating a 9-bit phase on the middle data qubit.
inline constexpr double kDefaultQpePhase = 337.0 / 512.0;  // exactly dyadic at 9 bits
inline constexpr int kDefaultQpeAncillas = 9;

// Wrapped distance between two phases expressed in turns; result in [0, 0.5].
double wrapped_distance(double a_turns, double b_turns);

// Analytic textbook QPE outcome distribution for an n_a-bit register reading a
// phase `phase_turns`:  P(k) = sin^2(2^n pi d_k) / (4^n sin^2(pi d_k)) with
// d_k = phase - k / 2^n.  Returns 2^n_a probabilities indexed by k.
std::vector<double> qpe_outcome_distribution(double phase_turns, int n_a);

// How a phase estimate (and its error) is extracted from an outcome histogram.
enum class PhaseEstimator {
  kMode,         // argmax_k P(k), error of the single most likely readout
  kExpectedAbs,  // sum_k P(k) * wrapped_distance(k/2^n, phase)
  kMinGrid,      // distance from the phase to the nearest representable k/2^n
};

const char* to_string(PhaseEstimator estimator);

// Absolute wrapped phase error of an estimator over an outcome histogram whose
// size must be a power of two (2^n_a entries, k read most-significant-first).
double phase_abs_error(const std::vector<double>& probs, double phase_turns,
                       PhaseEstimator estimator);

// Relative error |estimate - phase| / phase using the analytic distribution.
double qpe_relative_error(double phase_turns, int n_a, PhaseEstimator estimator);

// Textbook QPE circuit on `n_qubits` qubits: X-prepares `target` to |1>, puts
// the ancillas in superposition, applies controlled-phase powers
// CP(2 pi phase 2^j) from ancillas[j], and ends with a swapless inverse QFT so
// the readout k appears on the ancilla register with ancillas[0] as the most
// significant bit.
bench::Circuit qpe_circuit(int n_qubits, const std::vector<int>& ancillas, int target,
                    double phase_turns);

// Inverse of the swapless QFT gate sequence on the listed qubits.
void append_inverse_qft(bench::Circuit& circuit, const std::vector<int>& qubits);

// ---------------------------------------------------------------------------
// Distributed phase kickback
// ---------------------------------------------------------------------------

// Likelihood of reading 0 on the head ancilla of a p-node distributed kickback
// circuit: a GHZ-shared ancilla controls U = diag(1, e^{i theta}) on each
// node's |1>-prepared worker, the share is uncomputed, and the head receives
// the correction diag(1, e^{-i p xi}) before the final Hadamard.  Simulated on
// 2p qubits with an exact statevector.
double distributed_kickback_likelihood(int p, double theta, double xi);

// Closed form of the same likelihood: cos^2(p (theta - xi) / 2).
double kickback_likelihood_closed_form(int p, double theta, double xi);

// ---------------------------------------------------------------------------
// Link-dominated QPE error study
// ---------------------------------------------------------------------------

struct QpeErrorPoint {
  double t1_s = 0.0;         // memory time used for both T1 and T2
  double link_time_s = 0.0;  // delivery time of one internode CX window
  double error_mode = 0.0;         // relative error, mode estimator
  double error_expected_abs = 0.0; // relative error, expected |error| estimator
  double error_min_grid = 0.0;     // relative error, grid-resolution floor
};

// Runs the routed 10-qubit QPE instance (9 ancillas, data target on the far
// side of one node) through the noisy density-matrix simulator for every
// (t1, link_time) combination.  Local gates are ideal; the only error sources
// are idling decoherence during link windows and, if f_ll < 1, imperfect
// internode gates.  Points are emitted in row-major (t1-major) order.
std::vector<QpeErrorPoint> qpe_link_error_curve(const std::vector<double>& t1_list,
                                                const std::vector<double>& link_times,
                                                double phase_turns = kDefaultQpePhase,
                                                double f_ll = 1.0);

// ---------------------------------------------------------------------------
// Parallel-depth cost models
// ---------------------------------------------------------------------------

enum class DepthVariant {
  kClassical,          // classical sampling of the phase functional
  kQuantumDistilled,   // distilled-entanglement distributed QPE
  kQdrift,             // randomized (qDrift) Hamiltonian access
};

const char* to_string(DepthVariant variant);

struct DqpeCostQuery {
  double epsilon = 1e-3;        // target estimation error
  double delta = 0.1;           // failure probability budget
  double epsilon_theta = 1e-3;  // per-shot phase resolution (classical model)
  double gamma = 1.0;           // entanglement/communication cost weight
  double alpha = 1.0;           // qDrift 1-norm prefactor
  double e_gap = 1.0;           // spectral gap entering the qDrift runtime
  double t_workers = 1.0;       // number of worker partitions T
  void validate() const;
};

struct DepthModelOptions {
  // Exponent on the ln(T / epsilon) communication polylog term.  The cost
  // model uses 2; setting 0 reduces the tail to a bare gamma * T term, which
  // makes the sqrt worker-count rule exactly optimal.
  int polylog_power = 2;
};

// Parallel circuit depth of one DQPE variant:
//   classical:  ln(1/eps) / (delta * eps_theta)
//   distilled:  ln(1/eps) / (delta * eps) + 1 / (eps * T)
//                 + gamma * T * ln^pow(T / eps)
//   qdrift:     alpha * ln(1/eps) / (delta * e_gap) + alpha^4 / (eps^4 * T)
//                 + gamma * T * ln^pow(T / eps)
double parallel_depth_model(DepthVariant variant, const DqpeCostQuery& query,
                            const DepthModelOptions& options = {});

// Diamond-norm budget per communication channel so that m uses stay within
// epsilon: epsilon / (m * pi).
double channel_tolerance(double epsilon, int m);

// Worker partition count minimizing the distilled-model depth when the
// polylog tail is flat: max(1, round(sqrt(1 / (epsilon * gamma)))).
int optimal_worker_count(double epsilon, double gamma);

}  // namespace mnqc::dqpe
