#include "mnqc/dqpe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "mnqc/constants.hpp"
#include "mnqc/router.hpp"
#include "mnqc/simulator.hpp"
#include "mnqc/topology.hpp"

namespace mnqc::dqpe {
namespace {

constexpr double kPi = kTwoPi / 2.0;
constexpr int kMaxRegisterBits = 24;

int register_bits(std::size_t size) {
  if (size < 2 || !std::has_single_bit(size))
    throw std::invalid_argument("phase_abs_error: histogram size must be a power of two >= 2");
  return std::countr_zero(size);
}

double polylog_tail(double gamma, double t_workers, double epsilon, int power) {
  if (power == 0) return gamma * t_workers;
  return gamma * t_workers * std::pow(std::log(t_workers / epsilon), power);
}

}  // namespace

double wrapped_distance(double a_turns, double b_turns) {
  double d = std::fabs(a_turns - b_turns);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

std::vector<double> qpe_outcome_distribution(double phase_turns, int n_a) {
  if (n_a < 1 || n_a > kMaxRegisterBits)
    throw std::invalid_argument("qpe_outcome_distribution: ancilla count out of range");
  if (!std::isfinite(phase_turns))
    throw std::invalid_argument("qpe_outcome_distribution: phase must be finite");
  const std::size_t dim = std::size_t{1} << n_a;
  const double pow2n = std::ldexp(1.0, n_a);
  std::vector<double> probs(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    const double delta = phase_turns - static_cast<double>(k) / pow2n;
    const double denom = std::sin(kPi * delta);
    if (std::fabs(denom) < 1e-14) {
      probs[k] = 1.0;  // limit of the ratio as delta -> integer
      continue;
    }
    // Reduce 2^n delta mod 1 before the sine so dyadic phases give an exact
    // delta distribution instead of sin(pi * integer) rounding dust.
    const double scaled = pow2n * delta;
    const double num = std::sin(kPi * (scaled - std::nearbyint(scaled)));
    const double amp = num / (pow2n * denom);
    probs[k] = amp * amp;
  }
  return probs;
}

const char* to_string(PhaseEstimator estimator) {
  switch (estimator) {
    case PhaseEstimator::kMode: return "mode";
    case PhaseEstimator::kExpectedAbs: return "expected_abs";
    case PhaseEstimator::kMinGrid: return "min_grid";
  }
  throw std::invalid_argument("to_string: unknown estimator");
}

double phase_abs_error(const std::vector<double>& probs, double phase_turns,
                       PhaseEstimator estimator) {
  const int n = register_bits(probs.size());
  const double pow2n = std::ldexp(1.0, n);
  switch (estimator) {
    case PhaseEstimator::kMode: {
      std::size_t best = 0;
      for (std::size_t k = 1; k < probs.size(); ++k)
        if (probs[k] > probs[best]) best = k;
      return wrapped_distance(static_cast<double>(best) / pow2n, phase_turns);
    }
    case PhaseEstimator::kExpectedAbs: {
      double total = 0.0;
      double acc = 0.0;
      for (std::size_t k = 0; k < probs.size(); ++k) {
        const double p = std::max(probs[k], 0.0);
        total += p;
        acc += p * wrapped_distance(static_cast<double>(k) / pow2n, phase_turns);
      }
      if (total <= 0.0)
        throw std::invalid_argument("phase_abs_error: histogram must have positive mass");
      return acc / total;
    }
    case PhaseEstimator::kMinGrid: {
      double best = 0.5;
      for (std::size_t k = 0; k < probs.size(); ++k)
        best = std::min(best, wrapped_distance(static_cast<double>(k) / pow2n, phase_turns));
      return best;
    }
  }
  throw std::invalid_argument("phase_abs_error: unknown estimator");
}

double qpe_relative_error(double phase_turns, int n_a, PhaseEstimator estimator) {
  if (phase_turns <= 0.0)
    throw std::invalid_argument("qpe_relative_error: phase must be > 0 for a relative error");
  return phase_abs_error(qpe_outcome_distribution(phase_turns, n_a), phase_turns, estimator) /
         phase_turns;
}

bench::Circuit qpe_circuit(int n_qubits, const std::vector<int>& ancillas, int target,
                    double phase_turns) {
  if (ancillas.empty()) throw std::invalid_argument("qpe_circuit: ancilla list is empty");
  if (static_cast<int>(ancillas.size()) > kMaxRegisterBits)
    throw std::invalid_argument("qpe_circuit: ancilla register too wide");
  bench::Circuit circuit(n_qubits, "qpe");
  circuit.add("x", {target});
  for (int a : ancillas) circuit.add("h", {a});
  for (std::size_t j = 0; j < ancillas.size(); ++j) {
    const double angle = kTwoPi * phase_turns * std::ldexp(1.0, static_cast<int>(j));
    circuit.add("cp", {ancillas[j], target}, {angle});
  }
  append_inverse_qft(circuit, ancillas);
  return circuit;
}

void append_inverse_qft(bench::Circuit& circuit, const std::vector<int>& qubits) {
  const int n = static_cast<int>(qubits.size());
  for (int t = n - 1; t >= 0; --t) {
    for (int c = n - 1; c > t; --c) {
      const double angle = -kTwoPi / std::ldexp(1.0, c - t + 1);
      circuit.add("cp", {qubits[c], qubits[t]}, {angle});
    }
    circuit.add("h", {qubits[t]});
  }
}

double distributed_kickback_likelihood(int p, double theta, double xi) {
  if (p < 1 || p > 10)
    throw std::invalid_argument("distributed_kickback_likelihood: node count out of range");
  const int n = 2 * p;  // ancilla shares 0..p-1 (head = 0), workers p..2p-1
  bench::Circuit circuit(n, "kickback");
  for (int w = 0; w < p; ++w) circuit.add("x", {p + w});
  circuit.add("h", {0});
  for (int j = 1; j < p; ++j) circuit.add("cx", {0, j});
  for (int j = 0; j < p; ++j) circuit.add("cp", {j, p + j}, {theta});
  for (int j = p - 1; j >= 1; --j) circuit.add("cx", {0, j});
  circuit.add("phase", {0}, {-static_cast<double>(p) * xi});
  circuit.add("h", {0});
  const Vector psi = bench::simulate_statevector(circuit);
  const Eigen::Index half = psi.size() / 2;  // head ancilla is the most significant bit
  double p0 = 0.0;
  for (Eigen::Index i = 0; i < half; ++i) p0 += std::norm(psi(i));
  return p0;
}

double kickback_likelihood_closed_form(int p, double theta, double xi) {
  if (p < 1) throw std::invalid_argument("kickback_likelihood_closed_form: p must be >= 1");
  const double c = std::cos(0.5 * static_cast<double>(p) * (theta - xi));
  return c * c;
}

std::vector<QpeErrorPoint> qpe_link_error_curve(const std::vector<double>& t1_list,
                                                const std::vector<double>& link_times,
                                                double phase_turns, double f_ll) {
  if (t1_list.empty() || link_times.empty())
    throw std::invalid_argument("qpe_link_error_curve: axes must be non-empty");
  for (double t1 : t1_list)
    if (!(t1 > 0.0)) throw std::invalid_argument("qpe_link_error_curve: T1 values must be > 0");
  for (double lt : link_times)
    if (!(lt >= 0.0))
      throw std::invalid_argument("qpe_link_error_curve: link times must be >= 0");
  if (!(f_ll > 0.0) || f_ll > 1.0)
    throw std::invalid_argument("qpe_link_error_curve: link fidelity must be in (0, 1]");

  const bench::NodeTopology device = bench::NodeTopology::two_ring(5);
  const int target = 4;
  const std::vector<int> ancillas = {0, 1, 2, 3, 5, 6, 7, 8, 9};
  const bench::Circuit logical = qpe_circuit(device.n_qubits, ancillas, target, phase_turns);
  const bench::RoutedCircuit routed = bench::route(logical, device);

  std::vector<int> keep(ancillas.size());
  for (std::size_t i = 0; i < ancillas.size(); ++i) keep[i] = routed.final_layout[ancillas[i]];

  std::vector<QpeErrorPoint> points;
  points.reserve(t1_list.size() * link_times.size());
  for (double t1 : t1_list) {
    NoiseParams noise;
    noise.t1 = t1;
    noise.t2 = t1;
    noise.local_gate_time = 0.0;
    noise.depolarizing_prob = 0.0;
    noise.validate();
    for (double lt : link_times) {
      const bench::LinkModel link{f_ll, lt};
      const DensityMatrix rho = bench::simulate_density(routed.circuit, noise, link);
      const std::vector<double> probs = bench::measurement_distribution(rho);
      const std::vector<double> marg = bench::marginal_distribution(probs, device.n_qubits, keep);
      QpeErrorPoint point;
      point.t1_s = t1;
      point.link_time_s = lt;
      point.error_mode = phase_abs_error(marg, phase_turns, PhaseEstimator::kMode) / phase_turns;
      point.error_expected_abs =
          phase_abs_error(marg, phase_turns, PhaseEstimator::kExpectedAbs) / phase_turns;
      point.error_min_grid =
          phase_abs_error(marg, phase_turns, PhaseEstimator::kMinGrid) / phase_turns;
      points.push_back(point);
    }
  }
  return points;
}

const char* to_string(DepthVariant variant) {
  switch (variant) {
    case DepthVariant::kClassical: return "classical";
    case DepthVariant::kQuantumDistilled: return "quantum_distilled";
    case DepthVariant::kQdrift: return "qdrift";
  }
  throw std::invalid_argument("to_string: unknown depth variant");
}

void DqpeCostQuery::validate() const {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("DqpeCostQuery: epsilon must be in (0, 1)");
  if (!(delta > 0.0)) throw std::invalid_argument("DqpeCostQuery: delta must be > 0");
  if (!(epsilon_theta > 0.0))
    throw std::invalid_argument("DqpeCostQuery: epsilon_theta must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("DqpeCostQuery: gamma must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("DqpeCostQuery: alpha must be > 0");
  if (!(e_gap > 0.0)) throw std::invalid_argument("DqpeCostQuery: e_gap must be > 0");
  if (!(t_workers >= 1.0))
    throw std::invalid_argument("DqpeCostQuery: worker count must be >= 1");
}

double parallel_depth_model(DepthVariant variant, const DqpeCostQuery& query,
                            const DepthModelOptions& options) {
  query.validate();
  if (options.polylog_power < 0)
    throw std::invalid_argument("parallel_depth_model: polylog power must be >= 0");
  const double lg = -std::log(query.epsilon);
  switch (variant) {
    case DepthVariant::kClassical:
      return lg / (query.delta * query.epsilon_theta);
    case DepthVariant::kQuantumDistilled:
      return lg / (query.delta * query.epsilon) + 1.0 / (query.epsilon * query.t_workers) +
             polylog_tail(query.gamma, query.t_workers, query.epsilon, options.polylog_power);
    case DepthVariant::kQdrift: {
      const double alpha4 = std::pow(query.alpha, 4);
      const double eps4 = std::pow(query.epsilon, 4);
      return query.alpha * lg / (query.delta * query.e_gap) + alpha4 / (eps4 * query.t_workers) +
             polylog_tail(query.gamma, query.t_workers, query.epsilon, options.polylog_power);
    }
  }
  throw std::invalid_argument("parallel_depth_model: unknown variant");
}

double channel_tolerance(double epsilon, int m) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("channel_tolerance: epsilon must be > 0");
  if (m < 1) throw std::invalid_argument("channel_tolerance: channel uses must be >= 1");
  return epsilon / (static_cast<double>(m) * kPi);
}

int optimal_worker_count(double epsilon, double gamma) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("optimal_worker_count: epsilon must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("optimal_worker_count: gamma must be > 0");
  const double t = std::sqrt(1.0 / (epsilon * gamma));
  return static_cast<int>(std::max<long long>(1, std::llround(t)));
}

}  // namespace mnqc::dqpe
