#include "mnqc/gap.hpp"

#include <cmath>
#include <stdexcept>

namespace mnqc::bench {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  if (lo <= 0.0 || hi < lo || n < 1) throw std::invalid_argument("log grid: bad range");
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (std::log(hi) - std::log(lo)) / (n - 1);
  for (int k = 0; k < n; ++k) grid[k] = std::exp(std::log(lo) + k * step);
  return grid;
}

}  // namespace

GapAxes log_spaced_axes(double t_min, double t_max, int n_t, double i_min, double i_max, int n_i) {
  GapAxes axes;
  axes.link_time_s = log_grid(t_min, t_max, n_t);
  axes.link_infidelity = log_grid(i_min, i_max, n_i);
  return axes;
}

bool GapGrid::is_down_closed() const {
  for (std::size_t i = 0; i < success.size(); ++i) {
    for (std::size_t t = 0; t < success[i].size(); ++t) {
      if (!success[i][t]) continue;
      // Everything cheaper (smaller indices on both axes) must also succeed.
      for (std::size_t i2 = 0; i2 <= i; ++i2) {
        for (std::size_t t2 = 0; t2 <= t; ++t2) {
          if (!success[i2][t2]) return false;
        }
      }
    }
  }
  return true;
}

GapGrid gap_scan(BenchmarkKind benchmark, const GapAxes& axes, const NoiseParams& noise,
                 const BenchmarkParams& params, double threshold) {
  if (benchmark == BenchmarkKind::kQv) {
    throw std::invalid_argument("gap_scan: QV has its own driver");
  }
  GapGrid grid;
  grid.benchmark = benchmark;
  grid.threshold = threshold;
  grid.axes = axes;
  const Circuit logical = build_benchmark(benchmark, params);
  const RoutedCircuit routed = route(logical, NodeTopology::two_ring(params.n_qubits / 2));
  grid.scores.resize(axes.link_infidelity.size());
  grid.success.resize(axes.link_infidelity.size());
  for (std::size_t i = 0; i < axes.link_infidelity.size(); ++i) {
    grid.scores[i].resize(axes.link_time_s.size());
    grid.success[i].resize(axes.link_time_s.size());
    for (std::size_t t = 0; t < axes.link_time_s.size(); ++t) {
      LinkModel link;
      link.f_ll = 1.0 - axes.link_infidelity[i];
      link.t_ll = axes.link_time_s[t];
      const double score = simulate_noisy(benchmark, routed, noise, link, params);
      grid.scores[i][t] = score;
      grid.success[i][t] = score > threshold;
    }
  }
  return grid;
}

std::vector<FrontierPoint> link_frontier(const m2o::ConverterPreset& preset,
                                         const std::vector<double>& pe_grid,
                                         const std::vector<int>& rounds_list,
                                         const NoiseParams& noise) {
  std::vector<FrontierPoint> frontier;
  const double power = m2o::pump_power_for_cooperativity(preset, 1.0);
  for (double pe : pe_grid) {
    const m2o::HeraldedEpResult raw = m2o::simulate_heralded_cycle(preset, power, pe);
    if (raw.rate_hz <= 0.0) continue;
    const double raw_time = 1.0 / raw.rate_hz;
    for (int rounds : rounds_list) {
      distill::DistillationConfig config;
      config.rounds = rounds;
      config.raw_pair_time_s = raw_time;
      config.noise = noise;
      const distill::DistillationResult distilled = distill::nested_distillation(raw.state, config);
      const double delivery = distilled.total_time_s / distilled.success_prob;
      const gate::InternodeGateResult link = gate::teleported_cx(distilled.state, delivery, noise);
      FrontierPoint point;
      point.pe = pe;
      point.rounds = rounds;
      point.pump_watts = power;
      point.raw_rate_hz = raw.rate_hz;
      point.raw_fidelity = raw.fidelity;
      point.t_ll_s = link.gate_time_s;
      point.f_ll = link.process_fidelity;
      frontier.push_back(point);
    }
  }
  return frontier;
}

std::vector<BoundaryPoint> analytic_boundary(double f_target, int n_q, double t_star_s,
                                             double t_min_s, double t_max_s, int n_samples) {
  if (f_target <= 0.0 || f_target >= 1.0) {
    throw std::invalid_argument("analytic_boundary: f_target must be in (0, 1)");
  }
  if (n_q < 1 || t_star_s <= 0.0) throw std::invalid_argument("analytic_boundary: bad machine");
  const double budget = 1.0 - f_target;
  std::vector<BoundaryPoint> curve;
  for (double t : log_grid(t_min_s, t_max_s, n_samples)) {
    const double time_term = n_q * t / t_star_s;
    if (time_term >= budget) break;  // beyond the vertical asymptote
    curve.push_back({t, budget - time_term});
  }
  return curve;
}

}  // namespace mnqc::bench
