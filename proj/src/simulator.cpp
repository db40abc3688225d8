#include "mnqc/simulator.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mnqc::bench {

namespace {

long qubit_mask(int n_qubits, int q) { return 1L << (n_qubits - 1 - q); }

// Basis index with the target-qubit bits of `t_index` spread to `masks` and
// the remaining bits taken from `rest` (which must be zero on all masks).
long scatter_bits(long rest, long t_index, const std::vector<long>& masks) {
  long idx = rest;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if ((t_index >> (masks.size() - 1 - k)) & 1) idx |= masks[k];
  }
  return idx;
}

}  // namespace

void decohere_subset_in_place(Matrix& rho, int n_qubits, const std::vector<int>& qubits, double t,
                              double t1, double t2) {
  if (t <= 0.0 || qubits.empty()) return;
  const long d = rho.rows();
  const double s1 = std::exp(-t / t1);
  const double gain = 1.0 - s1;
  const double c2 = std::exp(-t / t2);
  long subset_mask = 0;
  for (int q : qubits) subset_mask |= qubit_mask(n_qubits, q);
  // Coherence pass: every entry picks up one factor of c2 per decohering
  // qubit whose bra/ket bits differ.  Population transfer below only touches
  // entries with equal bits on the involved qubit, so the passes commute.
  std::vector<double> c2_pow(qubits.size() + 1, 1.0);
  for (std::size_t k = 1; k < c2_pow.size(); ++k) c2_pow[k] = c2_pow[k - 1] * c2;
  for (long j = 0; j < d; ++j) {
    for (long i = 0; i < d; ++i) {
      const int flips = std::popcount(static_cast<unsigned long>((i ^ j) & subset_mask));
      if (flips != 0) rho(i, j) *= c2_pow[flips];
    }
  }
  // Per-qubit population transfer |1><1| -> s1 |1><1| + (1-s1) |0><0|.
  for (int q : qubits) {
    const long m = qubit_mask(n_qubits, q);
    for (long j = 0; j < d; ++j) {
      if ((j & m) != 0) continue;
      for (long i = 0; i < d; ++i) {
        if ((i & m) != 0) continue;
        Complex& excited = rho(i | m, j | m);
        rho(i, j) += gain * excited;
        excited *= s1;
      }
    }
  }
}

void depolarize_in_place(Matrix& rho, int n_qubits, const std::vector<int>& targets, double p) {
  if (p <= 0.0) return;
  if (p > 1.0) throw std::invalid_argument("depolarize_in_place: p > 1");
  const long d = rho.rows();
  std::vector<long> masks;
  masks.reserve(targets.size());
  long t_mask = 0;
  for (int q : targets) {
    masks.push_back(qubit_mask(n_qubits, q));
    t_mask |= masks.back();
  }
  const long dt = 1L << targets.size();
  // rho -> (1 - p) rho + p (I/dt) (x) tr_targets(rho), blockwise in place.
  for (long j = 0; j < d; ++j) {
    if ((j & t_mask) != 0) continue;
    for (long i = 0; i < d; ++i) {
      if ((i & t_mask) != 0) continue;
      Complex block_trace = 0.0;
      for (long k = 0; k < dt; ++k) {
        block_trace += rho(scatter_bits(i, k, masks), scatter_bits(j, k, masks));
      }
      const Complex mix = p * block_trace / static_cast<double>(dt);
      for (long ka = 0; ka < dt; ++ka) {
        const long row = scatter_bits(i, ka, masks);
        for (long kb = 0; kb < dt; ++kb) {
          Complex& entry = rho(row, scatter_bits(j, kb, masks));
          entry *= (1.0 - p);
          if (ka == kb) entry += mix;
        }
      }
    }
  }
}

DensityMatrix simulate_density(const Circuit& routed, const NoiseParams& noise,
                               const LinkModel& link) {
  noise.validate();
  if (link.f_ll < 0.0 || link.f_ll > 1.0 + 1e-12 || link.t_ll < 0.0) {
    throw std::invalid_argument("simulate_density: invalid link model");
  }
  const int n = routed.n_qubits;
  DensityMatrix rho =
      DensityMatrix::basis_state(HilbertLayout::qubits(n), std::vector<int>(n, 0));
  const auto layers = schedule_asap(routed);
  std::vector<int> all_qubits(n);
  std::iota(all_qubits.begin(), all_qubits.end(), 0);
  const double p_link = std::min(1.0, (1.0 - std::min(link.f_ll, 1.0)) * 16.0 / 15.0);
  for (const auto& layer : layers) {
    if (layer.internode) {
      const GateOp& op = routed.ops[layer.op_indices.front()];
      apply_unitary_in_place(rho, gate_matrix(op), op.qubits, -1.0);
      const double p_total = 1.0 - std::pow(1.0 - p_link, op.weight);
      depolarize_in_place(rho.mutable_data(), n, op.qubits, p_total);
      std::vector<int> spectators;
      spectators.reserve(n - 2);
      for (int q : all_qubits) {
        if (q != op.qubits[0] && q != op.qubits[1]) spectators.push_back(q);
      }
      decohere_subset_in_place(rho.mutable_data(), n, spectators, op.weight * link.t_ll, noise.t1,
                               noise.t2);
    } else {
      for (int idx : layer.op_indices) {
        const GateOp& op = routed.ops[idx];
        apply_unitary_in_place(rho, gate_matrix(op), op.qubits, -1.0);
        const double p_total = 1.0 - std::pow(1.0 - noise.depolarizing_prob, op.weight);
        depolarize_in_place(rho.mutable_data(), n, op.qubits, p_total);
      }
      decohere_subset_in_place(rho.mutable_data(), n, all_qubits,
                               layer.weight * noise.local_gate_time, noise.t1, noise.t2);
    }
  }
  return rho;
}

Vector simulate_statevector(const Circuit& circuit) {
  circuit.check_indices();
  const int n = circuit.n_qubits;
  const long d = 1L << n;
  Vector psi = Vector::Zero(d);
  psi(0) = 1.0;
  Vector gathered;
  for (const auto& op : circuit.ops) {
    const Matrix u = gate_matrix(op);
    std::vector<long> masks;
    long t_mask = 0;
    for (int q : op.qubits) {
      masks.push_back(qubit_mask(n, q));
      t_mask |= masks.back();
    }
    const long dt = u.rows();
    gathered.resize(dt);
    for (long rest = 0; rest < d; ++rest) {
      if ((rest & t_mask) != 0) continue;
      for (long k = 0; k < dt; ++k) gathered(k) = psi(scatter_bits(rest, k, masks));
      gathered = (u * gathered).eval();
      for (long k = 0; k < dt; ++k) psi(scatter_bits(rest, k, masks)) = gathered(k);
    }
  }
  return psi;
}

std::vector<double> measurement_distribution(const DensityMatrix& rho) {
  std::vector<double> probs(static_cast<std::size_t>(rho.dim()));
  for (long i = 0; i < rho.dim(); ++i) probs[i] = std::max(0.0, rho.data()(i, i).real());
  return probs;
}

std::vector<double> marginal_distribution(const std::vector<double>& probs, int n_qubits,
                                          const std::vector<int>& keep) {
  if (probs.size() != (1UL << n_qubits)) {
    throw std::invalid_argument("marginal_distribution: size mismatch");
  }
  std::vector<double> out(1UL << keep.size(), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::size_t key = 0;
    for (int q : keep) {
      key = (key << 1) | ((i >> (n_qubits - 1 - q)) & 1);
    }
    out[key] += probs[i];
  }
  return out;
}

}  // namespace mnqc::bench
