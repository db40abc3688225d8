#include "mnqc/quantum_volume.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mnqc::bench {

double qv_heavy_output_prob(const Circuit& model, const NodeTopology& topology,
                            const NoiseParams& noise, const LinkModel& link) {
  const Vector ideal = simulate_statevector(model);
  std::vector<double> ideal_probs(ideal.size());
  for (long k = 0; k < ideal.size(); ++k) ideal_probs[k] = std::norm(ideal(k));
  std::vector<double> sorted = ideal_probs;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t half = sorted.size() / 2;
  const double median = 0.5 * (sorted[half - 1] + sorted[half]);

  const RoutedCircuit routed = route(model, topology);
  const DensityMatrix rho = simulate_density(routed.circuit, noise, link);
  const auto probs = measurement_distribution(rho);
  std::vector<int> keep(model.n_qubits);
  for (int l = 0; l < model.n_qubits; ++l) keep[l] = routed.final_layout[l];
  const auto marginal = marginal_distribution(probs, routed.circuit.n_qubits, keep);

  double heavy = 0.0;
  for (std::size_t k = 0; k < marginal.size(); ++k) {
    if (ideal_probs[k] > median) heavy += marginal[k];
  }
  return heavy;
}

QvPointResult qv_point(int width, int trials, const NodeTopology& topology,
                       const NoiseParams& noise, const LinkModel& link, std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("qv_point: pass rule needs >= 100 trials");
  QvPointResult result;
  result.width = width;
  result.trials = trials;
  if (width > topology.n_qubits) {
    result.placeable = false;
    return result;
  }
  const Rng root(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = root.split(static_cast<std::uint64_t>(width) * 1000003 + trial);
    const Circuit model = qv_model_circuit(width, rng);
    const double hop = qv_heavy_output_prob(model, topology, noise, link);
    sum += hop;
    sum_sq += hop * hop;
  }
  result.mean_heavy_prob = sum / trials;
  const double variance =
      std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
  result.stderr_heavy_prob = std::sqrt(variance / trials);
  result.pass = result.mean_heavy_prob - 2.0 * result.stderr_heavy_prob > 2.0 / 3.0;
  return result;
}

QvResult quantum_volume(const NodeTopology& topology, const NoiseParams& noise,
                        const LinkModel& link, int trials, std::uint64_t seed, int max_width) {
  QvResult result;
  const int limit = max_width > 0 ? std::min(max_width, topology.n_qubits) : topology.n_qubits;
  for (int width = 2; width <= limit; ++width) {
    QvPointResult point = qv_point(width, trials, topology, noise, link, seed);
    result.points.push_back(point);
    if (!point.pass) break;
    result.max_passing_width = width;
  }
  return result;
}

}  // namespace mnqc::bench
