#pragma once

#include <string>

#include "mnqc/circuit.hpp"
#include "mnqc/noise.hpp"
#include "mnqc/rng.hpp"
#include "mnqc/router.hpp"
#include "mnqc/simulator.hpp"

namespace mnqc::bench {

enum class BenchmarkKind { kGhz, kBv, kQft, kAdder, kQv };

std::string to_string(BenchmarkKind kind);
BenchmarkKind benchmark_from_string(const std::string& name);

struct BenchmarkParams {
  int n_qubits = 10;
  std::string bv_secret = "111111111";  // data qubits 1..9; the ancilla is qubit 0
  int adder_a = 6;                      // 4-bit addends, b register receives a + b
  int adder_b = 11;
  int qv_width = 6;
  std::uint64_t qv_seed = 1;
};

Circuit ghz_circuit(int n_qubits);
Circuit bv_circuit(const std::string& secret);
Circuit qft_circuit(int n_qubits);
Circuit adder_circuit(int a, int b);
Circuit qv_model_circuit(int width, Rng& rng);
// Standard 6-CX Toffoli; appended to `circuit` on (control1, control2, target).
void append_toffoli(Circuit& circuit, int c1, int c2, int target);

Circuit build_benchmark(BenchmarkKind kind, const BenchmarkParams& params = {});

// Output-quality score of a noisy run: fidelity to the noiseless output state
// (ghz/qft/adder/qv) or probability of reading the correct secret (bv).
double benchmark_score(BenchmarkKind kind, const RoutedCircuit& routed, const DensityMatrix& noisy,
                       const BenchmarkParams& params = {});

// Full noisy execution of an already-routed benchmark.
double simulate_noisy(BenchmarkKind kind, const RoutedCircuit& routed, const NoiseParams& noise,
                      const LinkModel& link, const BenchmarkParams& params = {});

}  // namespace mnqc::bench
