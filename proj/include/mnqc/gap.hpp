#pragma once

#include <vector>

#include "mnqc/benchmarks.hpp"
#include "mnqc/distillation.hpp"
#include "mnqc/internode_gate.hpp"
#include "mnqc/m2o.hpp"

namespace mnqc::bench {

struct GapAxes {
  std::vector<double> link_time_s;      // log-spaced internode gate times
  std::vector<double> link_infidelity;  // log-spaced 1 - F_LL
};

GapAxes log_spaced_axes(double t_min, double t_max, int n_t, double i_min, double i_max, int n_i);

struct GapGrid {
  BenchmarkKind benchmark = BenchmarkKind::kGhz;
  double threshold = 0.9;
  GapAxes axes;
  // scores(i, t): row = infidelity index, column = time index.
  std::vector<std::vector<double>> scores;
  std::vector<std::vector<bool>> success;

  // Success at (t, i) implies success at every (t' <= t, i' <= i).
  bool is_down_closed() const;
};

GapGrid gap_scan(BenchmarkKind benchmark, const GapAxes& axes, const NoiseParams& noise,
                 const BenchmarkParams& params = {}, double threshold = 0.9);

// One achievable link operating point: M2O generation at C = 1 followed by
// nested distillation and gate teleportation.
struct FrontierPoint {
  double pe = 0.0;
  int rounds = 0;
  double pump_watts = 0.0;
  double raw_rate_hz = 0.0;
  double raw_fidelity = 0.0;
  double t_ll_s = 0.0;
  double f_ll = 0.0;
};

std::vector<FrontierPoint> link_frontier(const m2o::ConverterPreset& preset,
                                         const std::vector<double>& pe_grid,
                                         const std::vector<int>& rounds_list,
                                         const NoiseParams& noise);

// Iso-fidelity boundary of the budget model: link infidelity plus aggregate
// spectator decoherence N_q * T_link / T* equals the infidelity budget
// 1 - f_target.  Points trace (link time, boundary link infidelity).
struct BoundaryPoint {
  double link_time_s = 0.0;
  double link_infidelity = 0.0;
};

std::vector<BoundaryPoint> analytic_boundary(double f_target, int n_q, double t_star_s,
                                             double t_min_s, double t_max_s, int n_samples);

}  // namespace mnqc::bench
