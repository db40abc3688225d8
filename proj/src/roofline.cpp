#include "mnqc/roofline.hpp"

#include <cmath>
#include <stdexcept>

namespace mnqc::roofline {

namespace {

void check_stats(const CircuitStats& stats) {
  if (stats.n_1q < 0 || stats.n_2q < 0 || stats.n_comm < 0) {
    throw std::invalid_argument("CircuitStats: negative gate count");
  }
  if (stats.n_comm > stats.n_2q) {
    throw std::invalid_argument("CircuitStats: n_comm exceeds n_2q");
  }
}

void check_machine(const RooflineMachine& machine) {
  if (machine.n_q <= 0 || machine.n_links <= 0) {
    throw std::invalid_argument("RooflineMachine: nonpositive size");
  }
  if (machine.t_local <= 0.0 || machine.t_link < machine.t_local) {
    throw std::invalid_argument("RooflineMachine: requires t_link >= t_local > 0");
  }
}

}  // namespace

double compute_ccr(const CircuitStats& stats) {
  check_stats(stats);
  if (stats.n_comm == 0) return kInfiniteCcr;
  // Slot counting: a one-qubit gate occupies one slot, a two-qubit gate two;
  // CCR is local slots per communication slot.
  const double local_slots = stats.n_1q + 2.0 * (stats.n_2q - stats.n_comm);
  return local_slots / (2.0 * stats.n_comm);
}

double compute_mccr(const RooflineMachine& machine) {
  check_machine(machine);
  return machine.t_link / machine.t_local;
}

BoundResult classify_bound(const CircuitStats& stats, const RooflineMachine& machine) {
  BoundResult result;
  result.ccr = compute_ccr(stats);
  result.mccr = compute_mccr(machine);
  constexpr double kBalancedRelTol = 1e-9;
  if (std::isfinite(result.ccr) &&
      std::abs(result.ccr - result.mccr) <= kBalancedRelTol * result.mccr) {
    result.kind = BoundKind::kBalanced;
  } else if (result.ccr < result.mccr) {
    result.kind = BoundKind::kCommunication;
  } else {
    result.kind = BoundKind::kComputation;
  }
  const double density_cap = machine.n_q * stats.gate_density;
  const double comm_line = std::isfinite(result.ccr)
                               ? machine.n_q * result.ccr / result.mccr
                               : std::numeric_limits<double>::infinity();
  result.delivered_rate = std::min(density_cap, comm_line);
  return result;
}

RooflineMachine distillation_shift(const RooflineMachine& machine, int rounds, ShiftMode mode,
                                   double purification_step_time_s) {
  check_machine(machine);
  if (rounds < 0) throw std::invalid_argument("distillation_shift: negative rounds");
  RooflineMachine shifted = machine;
  if (mode == ShiftMode::kPaper) {
    shifted.t_link = machine.t_link * (1.0 + rounds);
  } else {
    shifted.t_link = std::ldexp(machine.t_link, rounds) + rounds * purification_step_time_s;
  }
  return shifted;
}

}  // namespace mnqc::roofline
