#include "mnqc/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

#include "mnqc/constants.hpp"

namespace mnqc::bench {

std::string to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::kGhz: return "ghz";
    case BenchmarkKind::kBv: return "bv";
    case BenchmarkKind::kQft: return "qft";
    case BenchmarkKind::kAdder: return "adder";
    case BenchmarkKind::kQv: return "qv";
  }
  throw std::logic_error("unreachable");
}

BenchmarkKind benchmark_from_string(const std::string& name) {
  if (name == "ghz") return BenchmarkKind::kGhz;
  if (name == "bv") return BenchmarkKind::kBv;
  if (name == "qft") return BenchmarkKind::kQft;
  if (name == "adder") return BenchmarkKind::kAdder;
  if (name == "qv") return BenchmarkKind::kQv;
  throw std::invalid_argument("unknown benchmark '" + name + "' (expected ghz|bv|qft|adder|qv)");
}

Circuit ghz_circuit(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("ghz_circuit: need at least 2 qubits");
  Circuit c(n_qubits, "ghz");
  c.add("h", {0});
  for (int i = 0; i + 1 < n_qubits; ++i) c.add("cx", {i, i + 1});
  return c;
}

Circuit bv_circuit(const std::string& secret) {
  const int n_data = static_cast<int>(secret.size());
  if (n_data < 1) throw std::invalid_argument("bv_circuit: empty secret");
  for (char ch : secret) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bv_circuit: secret must be binary");
  }
  Circuit c(n_data + 1, "bv");
  c.metadata["secret"] = secret;
  // Ancilla on qubit 0 in |->; data qubits 1..n_data.
  c.add("x", {0});
  c.add("h", {0});
  for (int d = 1; d <= n_data; ++d) c.add("h", {d});
  for (int d = 1; d <= n_data; ++d) {
    if (secret[d - 1] == '1') c.add("cx", {d, 0});
  }
  for (int d = 1; d <= n_data; ++d) c.add("h", {d});
  return c;
}

Circuit qft_circuit(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("qft_circuit: need at least 1 qubit");
  Circuit c(n_qubits, "qft");
  for (int t = 0; t < n_qubits; ++t) {
    c.add("h", {t});
    for (int ctrl = t + 1; ctrl < n_qubits; ++ctrl) {
      c.add("cp", {ctrl, t}, {kTwoPi / std::pow(2.0, ctrl - t + 1)});
    }
  }
  return c;
}

void append_toffoli(Circuit& circuit, int c1, int c2, int target) {
  circuit.add("h", {target});
  circuit.add("cx", {c2, target});
  circuit.add("tdg", {target});
  circuit.add("cx", {c1, target});
  circuit.add("t", {target});
  circuit.add("cx", {c2, target});
  circuit.add("tdg", {target});
  circuit.add("cx", {c1, target});
  circuit.add("t", {c2});
  circuit.add("t", {target});
  circuit.add("h", {target});
  circuit.add("cx", {c1, c2});
  circuit.add("t", {c1});
  circuit.add("tdg", {c2});
  circuit.add("cx", {c1, c2});
}

namespace {

// Ripple-carry adder qubit placement along the 0-9 line: carry-in, then
// alternating (b_i, a_i) pairs from the least significant bit, carry-out last.
constexpr int kCin = 0;
constexpr int kCout = 9;
int b_qubit(int i) { return 1 + 2 * i; }  // i = 0..3
int a_qubit(int i) { return 2 + 2 * i; }

void append_maj(Circuit& c, int x, int y, int z) {
  c.add("cx", {z, y});
  c.add("cx", {z, x});
  append_toffoli(c, x, y, z);
}

void append_uma(Circuit& c, int x, int y, int z) {
  append_toffoli(c, x, y, z);
  c.add("cx", {z, x});
  c.add("cx", {x, y});
}

}  // namespace

Circuit adder_circuit(int a, int b) {
  if (a < 0 || a > 15 || b < 0 || b > 15) {
    throw std::invalid_argument("adder_circuit: addends must be 4-bit");
  }
  Circuit c(10, "adder");
  c.metadata["a"] = std::to_string(a);
  c.metadata["b"] = std::to_string(b);
  for (int i = 0; i < 4; ++i) {
    if ((a >> i) & 1) c.add("x", {a_qubit(i)});
    if ((b >> i) & 1) c.add("x", {b_qubit(i)});
  }
  append_maj(c, kCin, b_qubit(0), a_qubit(0));
  for (int i = 1; i < 4; ++i) append_maj(c, a_qubit(i - 1), b_qubit(i), a_qubit(i));
  c.add("cx", {a_qubit(3), kCout});
  for (int i = 3; i >= 1; --i) append_uma(c, a_qubit(i - 1), b_qubit(i), a_qubit(i));
  append_uma(c, kCin, b_qubit(0), a_qubit(0));
  return c;
}

Circuit qv_model_circuit(int width, Rng& rng) {
  if (width < 2) throw std::invalid_argument("qv_model_circuit: width must be >= 2");
  Circuit c(width, "qv");
  for (int layer = 0; layer < width; ++layer) {
    std::vector<int> perm(width);
    for (int i = 0; i < width; ++i) perm[i] = i;
    for (int i = width - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform_int(i + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int pair = 0; pair + 1 < width; pair += 2) {
      c.add_matrix_gate("su4", {perm[pair], perm[pair + 1]}, random_unitary(4, rng), 3);
    }
  }
  return c;
}

Circuit build_benchmark(BenchmarkKind kind, const BenchmarkParams& params) {
  switch (kind) {
    case BenchmarkKind::kGhz: return ghz_circuit(params.n_qubits);
    case BenchmarkKind::kBv: return bv_circuit(params.bv_secret);
    case BenchmarkKind::kQft: return qft_circuit(params.n_qubits);
    case BenchmarkKind::kAdder: return adder_circuit(params.adder_a, params.adder_b);
    case BenchmarkKind::kQv: {
      Rng rng(params.qv_seed);
      return qv_model_circuit(params.qv_width, rng);
    }
  }
  throw std::logic_error("unreachable");
}

double benchmark_score(BenchmarkKind kind, const RoutedCircuit& routed, const DensityMatrix& noisy,
                       const BenchmarkParams& params) {
  if (kind == BenchmarkKind::kBv) {
    const auto probs = measurement_distribution(noisy);
    const int n = routed.circuit.n_qubits;
    const std::string& secret = params.bv_secret;
    double p_correct = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      bool match = true;
      for (std::size_t s = 0; s < secret.size() && match; ++s) {
        const int phys = routed.final_layout.at(1 + s);
        const int bit = static_cast<int>((i >> (n - 1 - phys)) & 1);
        match = bit == secret[s] - '0';
      }
      if (match) p_correct += probs[i];
    }
    return p_correct;
  }
  return state_fidelity(noisy, simulate_statevector(routed.circuit));
}

double simulate_noisy(BenchmarkKind kind, const RoutedCircuit& routed, const NoiseParams& noise,
                      const LinkModel& link, const BenchmarkParams& params) {
  const DensityMatrix rho = simulate_density(routed.circuit, noise, link);
  return benchmark_score(kind, routed, rho, params);
}

}  // namespace mnqc::bench
