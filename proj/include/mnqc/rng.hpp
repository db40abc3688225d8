#pragma once

#include <cstdint>

#include "mnqc/density_matrix.hpp"

namespace mnqc {

// Deterministic counter-friendly generator (splitmix64).  All randomness in
// the toolkit flows from one root seed through `split`, so grid tasks get
// reproducible streams regardless of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform();

  // Standard normal via Box-Muller (implemented locally so sequences are
  // identical across platforms and library versions).
  double normal();

  // Uniform integer in [0, n).
  int uniform_int(int n);

  // Independent child stream addressed by a counter; derived from the
  // current root state without advancing it.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Haar-ish random unitary: QR of a complex Ginibre matrix with the phase
// convention R_ii > 0 (gives the Haar measure exactly).
Matrix random_unitary(int dim, Rng& rng);

}  // namespace mnqc
