#pragma once

#include <limits>

namespace mnqc::roofline {

// Post-lowering gate counts of a routed circuit.  n_2q counts every two-qubit
// gate in CX-equivalents including the internode ones, so n_comm <= n_2q.
struct CircuitStats {
  int depth = 0;
  int n_1q = 0;
  int n_2q = 0;
  int n_comm = 0;
  double gate_density = 0.0;  // occupied gate slots / (depth * N_q), in (0, 1]
};

struct RooflineMachine {
  int n_q = 10;
  double t_local = 100e-9;
  double t_link = 100e-9;  // average internode gate latency, >= t_local
  int n_links = 1;
};

// Computation-to-communication ratio in gate-slot units: local slots per
// communication slot, (n_1q + 2*(n_2q - n_comm)) / (2*n_comm).  Returns +inf
// when the circuit has no internode gates.
double compute_ccr(const CircuitStats& stats);

// Machine balance point MCCR = t_link / t_local.
double compute_mccr(const RooflineMachine& machine);

enum class BoundKind { kCommunication, kComputation, kBalanced };

struct BoundResult {
  BoundKind kind = BoundKind::kComputation;
  double ccr = 0.0;
  double mccr = 0.0;
  // Gates per local gate time: min(N_q * density, N_q * CCR / MCCR).
  double delivered_rate = 0.0;
};

BoundResult classify_bound(const CircuitStats& stats, const RooflineMachine& machine);

enum class ShiftMode { kPaper, kRecurrence };

// Communication slowdown from nested distillation.  Paper mode multiplies
// t_link by (1 + rounds); recurrence mode sets t_link to the closed-form
// nested delivery time 2^rounds * t_link + rounds * purification_step_time.
RooflineMachine distillation_shift(const RooflineMachine& machine, int rounds, ShiftMode mode,
                                   double purification_step_time_s = 1e-6);

inline constexpr double kInfiniteCcr = std::numeric_limits<double>::infinity();

}  // namespace mnqc::roofline
