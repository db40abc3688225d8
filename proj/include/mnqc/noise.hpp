#pragma once

#include <stdexcept>

namespace mnqc {

// Shared noise configuration for local operations on the data plane and for
// the entanglement distillation layer.
struct NoiseParams {
  double t1 = 1e-3;                        // relaxation time [s]
  double t2 = 1e-3;                        // coherence time [s], t2 <= 2 t1
  double local_gate_time = 100e-9;         // data-plane local gate duration [s]
  double depolarizing_prob = 1e-4;         // per-gate depolarizing probability
  double purification_step_time = 1e-6;    // gates + measurement per distillation round [s]

  void validate() const {
    if (t1 <= 0.0 || t2 <= 0.0) throw std::invalid_argument("NoiseParams: T1, T2 must be > 0");
    if (t2 > 2.0 * t1 * (1.0 + 1e-12))
      throw std::invalid_argument("NoiseParams: T2 must not exceed 2*T1");
    if (local_gate_time < 0.0 || purification_step_time < 0.0)
      throw std::invalid_argument("NoiseParams: durations must be >= 0");
    if (depolarizing_prob < 0.0 || depolarizing_prob > 1.0)
      throw std::invalid_argument("NoiseParams: depolarizing probability must be in [0, 1]");
  }
};

}  // namespace mnqc
