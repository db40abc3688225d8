#pragma once

#include <cstdint>
#include <vector>

#include "mnqc/benchmarks.hpp"

namespace mnqc::bench {

struct QvPointResult {
  int width = 0;
  int trials = 0;
  double mean_heavy_prob = 0.0;
  double stderr_heavy_prob = 0.0;
  bool pass = false;  // mean - 2 * stderr > 2/3, or false when width > device
  bool placeable = true;
};

struct QvResult {
  int max_passing_width = 0;  // quantum volume = 2^max_passing_width
  std::vector<QvPointResult> points;
};

// Heavy-output probability of one model circuit: heavy set from the ideal
// distribution, probability from the routed noisy run.
double qv_heavy_output_prob(const Circuit& model, const NodeTopology& topology,
                            const NoiseParams& noise, const LinkModel& link);

// Mean heavy-output statistics over `trials` random model circuits of the
// given width (>= 100 per the pass rule).
QvPointResult qv_point(int width, int trials, const NodeTopology& topology,
                       const NoiseParams& noise, const LinkModel& link, std::uint64_t seed);

// Scans widths from 2 upward, stopping at the first failure.
QvResult quantum_volume(const NodeTopology& topology, const NoiseParams& noise,
                        const LinkModel& link, int trials, std::uint64_t seed, int max_width = 0);

}  // namespace mnqc::bench
