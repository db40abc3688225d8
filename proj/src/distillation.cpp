#include "mnqc/distillation.hpp"

#include <cmath>
#include <stdexcept>

#include "mnqc/channel.hpp"
#include "mnqc/gates.hpp"

namespace mnqc::distill {

void DistillationConfig::validate() const {
  if (rounds < 0) throw std::invalid_argument("DistillationConfig: rounds must be >= 0");
  if (raw_pair_time_s <= 0.0)
    throw std::invalid_argument("DistillationConfig: raw_pair_time must be > 0");
  noise.validate();
}

double bbpssw_update(double f) {
  const double g = 1.0 - f;
  const double num = f * f + g * g / 9.0;
  const double den = f * f + 2.0 * f * g / 3.0 + 5.0 * g * g / 9.0;
  return num / den;
}

namespace {

// Applies single-qubit relaxation/dephasing for duration t to every qubit in
// `targets`.
void decohere(DensityMatrix& rho, const std::vector<int>& targets, double t,
              const NoiseParams& noise) {
  if (t <= 0.0) return;
  const QuantumChannel ch = relaxation_dephasing_channel(t, noise.t1, noise.t2);
  for (int q : targets) rho = apply_kraus(rho, ch.kraus, {q});
}

void depolarize_pair(DensityMatrix& rho, int a, int b, double p) {
  if (p <= 0.0) return;
  const QuantumChannel ch = depolarizing_channel(p, 2);
  rho = apply_kraus(rho, ch.kraus, {a, b});
}

}  // namespace

RoundOutput dejmps_round(const DensityMatrix& pair1, const DensityMatrix& pair2,
                         const NoiseParams& noise, bool ideal_memory) {
  if (pair1.dim() != 4 || pair2.dim() != 4)
    throw std::invalid_argument("dejmps_round: inputs must be two-qubit states");

  // Joint layout (A1, B1, A2, B2): pair1 = (A1, B1) is kept, pair2 = (A2, B2)
  // is sacrificed.  A-side qubits {0, 2} live on one node, B-side {1, 3} on
  // the other.
  DensityMatrix joint = tensor_product(pair1, pair2);
  const Matrix rx_pos = gates::rx(M_PI / 2.0);
  const Matrix rx_neg = gates::rx(-M_PI / 2.0);
  apply_unitary_in_place(joint, rx_pos, {0});
  apply_unitary_in_place(joint, rx_pos, {2});
  apply_unitary_in_place(joint, rx_neg, {1});
  apply_unitary_in_place(joint, rx_neg, {3});

  apply_unitary_in_place(joint, gates::cx(), {0, 2});
  depolarize_pair(joint, 0, 2, noise.depolarizing_prob);
  apply_unitary_in_place(joint, gates::cx(), {1, 3});
  depolarize_pair(joint, 1, 3, noise.depolarizing_prob);

  // Coincident computational-basis outcomes on the sacrificial pair.
  Matrix keep = Matrix::Zero(4, 4);
  keep(0, 0) = 1.0;
  keep(3, 3) = 1.0;
  DensityMatrix projected = project(joint, keep, {2, 3});
  const double p_success = projected.trace_real();
  if (p_success <= 1e-300)
    throw std::runtime_error("dejmps_round: zero coincidence probability");

  DensityMatrix kept = partial_trace(projected, {0, 1}).normalized();
  if (!ideal_memory)
    decohere(kept, {0, 1}, noise.purification_step_time, noise);
  return RoundOutput{std::move(kept), p_success};
}

DistillationResult nested_distillation(const DensityMatrix& raw_pair,
                                       const DistillationConfig& config) {
  config.validate();
  if (raw_pair.dim() != 4)
    throw std::invalid_argument("nested_distillation: raw pair must be a two-qubit state");

  DistillationResult result{raw_pair, config.raw_pair_time_s, 1.0, {}, 0.0};
  DensityMatrix current = raw_pair;
  for (int j = 1; j <= config.rounds; ++j) {
    const double idle = std::ldexp(config.raw_pair_time_s, j - 1);  // 2^{j-1} tau
    DensityMatrix waited = current;
    if (!config.ideal_memory) decohere(waited, {0, 1}, idle, config.noise);
    RoundOutput round = dejmps_round(waited, current, config.noise, config.ideal_memory);
    current = std::move(round.state);
    result.per_round_p.push_back(round.success_prob);
    result.total_time_s = idle + result.total_time_s + config.noise.purification_step_time;
  }
  result.state = current;
  result.success_prob = single_shot_success(result.per_round_p);
  result.fidelity = bell_fidelity(result.state, BellLabel::kPsiPlus);
  return result;
}

double single_shot_success(const std::vector<double>& per_round_p) {
  double p = 1.0;
  for (std::size_t j = 0; j < per_round_p.size(); ++j)
    p *= std::pow(per_round_p[j], std::ldexp(1.0, static_cast<int>(j)));  // p_j^{2^{j-1}}
  return p;
}

double distillation_time(int rounds, double raw_pair_time_s, double step_time_s) {
  return std::ldexp(raw_pair_time_s, rounds) + rounds * step_time_s;
}

std::vector<FidelityGainPoint> fidelity_gain_study(const std::vector<double>& f0_grid,
                                                   const std::vector<double>& p_cnot_list,
                                                   const NoiseParams& noise) {
  std::vector<FidelityGainPoint> table;
  table.reserve(f0_grid.size() * p_cnot_list.size());
  for (double p_cnot : p_cnot_list) {
    NoiseParams local = noise;
    local.depolarizing_prob = p_cnot;
    for (double f0 : f0_grid) {
      const DensityMatrix w = werner_state(f0, BellLabel::kPsiPlus);
      const RoundOutput out = dejmps_round(w, w, local, /*ideal_memory=*/true);
      table.push_back({f0, p_cnot, bell_fidelity(out.state, BellLabel::kPsiPlus) - f0});
    }
  }
  return table;
}

}  // namespace mnqc::distill
