#include "mnqc/router.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace mnqc::bench {

namespace {

// Communication-minimizing rewrite for fan-in patterns: a run of consecutive
// plain CXs sharing one target (the kicks of a fan-in oracle) is regrouped per
// node into parity folds along the ring toward one accumulator, a single
// accumulator-to-target CX, and the unfolds.  Same-target CXs commute and the
// folds are uncomputed, so the rewrite is an exact unitary identity; it turns
// k link crossings into one at the cost of 2(k-1) local CXs.
class FaninFolder {
 public:
  FaninFolder(const NodeTopology& topo, const std::vector<int>& layout)
      : topo_(topo), layout_(layout), dist_(topo.distances()) {
    adjacency_ = topo.adjacency();
    at_.assign(topo.n_qubits, -1);
    for (int l = 0; l < static_cast<int>(layout.size()); ++l) at_[layout[l]] = l;
  }

  Circuit run(const Circuit& logical) {
    Circuit out(logical.n_qubits, logical.name);
    out.metadata = logical.metadata;
    const auto& ops = logical.ops;
    std::size_t i = 0;
    while (i < ops.size()) {
      if (!is_plain_cx(ops[i])) {
        out.ops.push_back(ops[i]);
        ++i;
        continue;
      }
      const int target = ops[i].qubits[1];
      std::size_t j = i;
      std::vector<int> controls;
      while (j < ops.size() && is_plain_cx(ops[j]) && ops[j].qubits[1] == target) {
        controls.push_back(ops[j].qubits[0]);
        ++j;
      }
      if (!rewrite_worthwhile(controls, target)) {
        for (std::size_t k = i; k < j; ++k) out.ops.push_back(ops[k]);
        i = j;
        continue;
      }
      emit_fanin(out, controls, target);
      i = j;
    }
    return out;
  }

 private:
  static bool is_plain_cx(const GateOp& op) {
    return op.name == "cx" && op.matrix.size() == 0 && op.arity() == 2;
  }

  // Rewrite only clean fan-ins: at least two controls on the far node, no
  // duplicate controls (a repeated kick must stay verbatim to keep the
  // identity exact).
  bool rewrite_worthwhile(const std::vector<int>& controls, int target) const {
    std::vector<int> sorted = controls;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    const int target_node = topo_.node_of(layout_[target]);
    int far = 0;
    for (int c : controls) {
      if (topo_.node_of(layout_[c]) != target_node) ++far;
    }
    return far >= 2;
  }

  void emit_fanin(Circuit& out, const std::vector<int>& controls, int target) {
    const int target_node = topo_.node_of(layout_[target]);
    std::vector<int> near;
    std::vector<int> far;
    for (int c : controls) {
      (topo_.node_of(layout_[c]) == target_node ? near : far).push_back(c);
    }
    // Near-side kicks: fold when there are at least three (a ladder saves
    // router swaps), otherwise kick directly.
    if (static_cast<int>(near.size()) >= 3) {
      emit_side(out, near, target, layout_[target]);
    } else {
      for (int c : near) out.add("cx", {c, target});
    }
    const int far_port = target_node == 0 ? topo_.link_edge.second : topo_.link_edge.first;
    emit_side(out, far, target, far_port);
  }

  // Folds `controls` into the one nearest `anchor_phys`, kicks the accumulated
  // parity into `target`, and unfolds.  Folding walks contiguous runs of
  // controls along the ring so every fold lands on a physical edge.
  void emit_side(Circuit& out, std::vector<int> controls, int target, int anchor_phys) {
    if (controls.empty()) return;
    if (controls.size() == 1) {
      out.add("cx", {controls.front(), target});
      return;
    }
    std::sort(controls.begin(), controls.end(), [&](int a, int b) {
      return std::make_pair(dist_[layout_[a]][anchor_phys], a) <
             std::make_pair(dist_[layout_[b]][anchor_phys], b);
    });
    const int acc = controls.front();
    std::vector<char> is_control(topo_.n_qubits, 0);
    for (int c : controls) is_control[layout_[c]] = 1;

    // Greedy arms: from the accumulator, walk ring neighbours while they hold
    // controls; each arm folds outermost-first so every CX is edge-adjacent.
    std::vector<char> used(topo_.n_qubits, 0);
    used[layout_[acc]] = 1;
    std::vector<GateOp> folds;
    for (int start : adjacency_[layout_[acc]]) {
      if (!is_control[start] || used[start]) continue;
      std::vector<int> arm;  // physical positions, inner to outer
      int prev = layout_[acc];
      int cur = start;
      while (is_control[cur] && !used[cur]) {
        used[cur] = 1;
        arm.push_back(cur);
        int next = -1;
        for (int n : adjacency_[cur]) {
          if (n != prev && is_control[n] && !used[n] && topo_.node_of(n) == topo_.node_of(cur)) {
            next = n;
            break;
          }
        }
        if (next < 0) break;
        prev = cur;
        cur = next;
      }
      for (int k = static_cast<int>(arm.size()) - 1; k >= 1; --k) {
        folds.push_back(make_cx(at_[arm[k]], at_[arm[k - 1]]));
      }
      folds.push_back(make_cx(at_[arm.front()], acc));
    }
    // Controls not reachable along control-filled arms fold point-to-point;
    // the router bridges the gaps with swaps.
    for (int c : controls) {
      if (used[layout_[c]]) continue;
      used[layout_[c]] = 1;
      folds.push_back(make_cx(c, acc));
    }
    for (const auto& f : folds) out.ops.push_back(f);
    out.add("cx", {acc, target});
    for (auto it = folds.rbegin(); it != folds.rend(); ++it) out.ops.push_back(*it);
  }

  static GateOp make_cx(int control, int target) {
    GateOp op;
    op.name = "cx";
    op.qubits = {control, target};
    return op;
  }

  const NodeTopology& topo_;
  const std::vector<int>& layout_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> at_;
};

Circuit fold_cross_fanins(const Circuit& logical, const NodeTopology& topo,
                          const std::vector<int>& layout) {
  FaninFolder folder(topo, layout);
  return folder.run(logical);
}

class GreedyRouter {
 public:
  GreedyRouter(const Circuit& logical, const NodeTopology& topo, std::vector<int> initial_layout)
      : logical_(logical), topo_(topo), dist_(topo.distances()) {
    if (logical.n_qubits > topo.n_qubits) {
      throw std::invalid_argument("route: circuit wider than topology");
    }
    logical.check_indices();
    if (initial_layout.empty()) {
      initial_layout.resize(logical.n_qubits);
      std::iota(initial_layout.begin(), initial_layout.end(), 0);
    }
    if (static_cast<int>(initial_layout.size()) != logical.n_qubits) {
      throw std::invalid_argument("route: initial layout size mismatch");
    }
    phys_of_ = initial_layout;
    log_at_.assign(topo.n_qubits, -1);
    for (int l = 0; l < logical.n_qubits; ++l) {
      const int p = phys_of_[l];
      if (p < 0 || p >= topo.n_qubits || log_at_[p] != -1) {
        throw std::invalid_argument("route: invalid initial layout");
      }
      log_at_[p] = l;
    }
    result_.initial_layout = phys_of_;
    result_.topology = topo;
    result_.circuit.n_qubits = topo.n_qubits;
    result_.circuit.name = logical.name;
    result_.circuit.metadata = logical.metadata;
    // Indices of two-qubit ops, used for the lookahead score.
    for (int i = 0; i < static_cast<int>(logical.ops.size()); ++i) {
      if (logical.ops[i].arity() == 2) two_qubit_ops_.push_back(i);
    }
  }

  RoutedCircuit run() {
    for (int i = 0; i < static_cast<int>(logical_.ops.size()); ++i) {
      const GateOp& op = logical_.ops[i];
      if (op.arity() == 1) {
        emit_1q(op, phys_of_[op.qubits[0]]);
      } else if (op.arity() == 2) {
        while (!two_qubit_ops_.empty() && two_qubit_ops_.front() <= i) {
          two_qubit_ops_.erase(two_qubit_ops_.begin());
        }
        route_2q(op);
      } else {
        throw std::invalid_argument("route: gates above two qubits must be pre-decomposed");
      }
    }
    result_.final_layout = phys_of_;
    finalize_stats();
    return std::move(result_);
  }

 private:
  void emit_1q(const GateOp& op, int phys) {
    GateOp out = op;
    out.qubits = {phys};
    result_.circuit.ops.push_back(std::move(out));
  }

  void emit_cx(int control, int target) {
    GateOp out;
    out.name = "cx";
    out.qubits = {control, target};
    out.is_internode = topo_.is_link(control, target);
    result_.circuit.ops.push_back(std::move(out));
  }

  void emit_rz(double theta, int phys) {
    GateOp out;
    out.name = "rz";
    out.qubits = {phys};
    out.params = {theta};
    result_.circuit.ops.push_back(std::move(out));
  }

  void emit_swap(int a, int b) {
    emit_cx(a, b);
    emit_cx(b, a);
    emit_cx(a, b);
    std::swap(log_at_[a], log_at_[b]);
    if (log_at_[a] >= 0) phys_of_[log_at_[a]] = a;
    if (log_at_[b] >= 0) phys_of_[log_at_[b]] = b;
  }

  // Distance of the next pending two-qubit gate under the current mapping
  // (callers temporarily apply the candidate swap before asking).
  int lookahead_distance() const {
    if (two_qubit_ops_.empty()) return 0;
    const GateOp& next = logical_.ops[two_qubit_ops_.front()];
    return dist_[phys_of_[next.qubits[0]]][phys_of_[next.qubits[1]]];
  }

  void route_2q(const GateOp& op) {
    const int la = op.qubits[0];
    const int lb = op.qubits[1];
    while (dist_[phys_of_[la]][phys_of_[lb]] > 1) {
      const int pa = phys_of_[la];
      const int pb = phys_of_[lb];
      const int current = dist_[pa][pb];
      // Pick the strictly-improving swap with the best (distance, lookahead)
      // score; ties resolve on the smallest swap edge for determinism.  A swap
      // across the internode edge costs three link gates, so it is ranked
      // behind every local candidate and is taken only when nothing local
      // improves (cross-node pairs instead meet at the link ports and use a
      // single internode gate).
      std::tuple<int, int, int, int, int> best{INT32_MAX, INT32_MAX, INT32_MAX, INT32_MAX,
                                               INT32_MAX};
      int best_p = -1;
      int best_n = -1;
      for (int p : {pa, pb}) {
        for (const auto& [u, v] : topo_.edges) {
          if (u != p && v != p) continue;
          const int n = u == p ? v : u;
          const int na = p == pa ? n : (n == pa ? p : pa);
          const int nb = p == pb ? n : (n == pb ? p : pb);
          const int nd = dist_[na][nb];
          if (nd >= current) continue;
          swap_mapping(p, n);
          const int look = lookahead_distance();
          swap_mapping(p, n);  // revert
          const int on_link = topo_.is_link(p, n) ? 1 : 0;
          const std::tuple<int, int, int, int, int> score{on_link, nd, look, std::min(p, n),
                                                          std::max(p, n)};
          if (score < best) {
            best = score;
            best_p = p;
            best_n = n;
          }
        }
      }
      if (best_p < 0) throw std::logic_error("route: no improving swap found");
      emit_swap(best_p, best_n);
    }
    emit_gate_at(op, phys_of_[la], phys_of_[lb]);
  }

  void swap_mapping(int a, int b) {
    std::swap(log_at_[a], log_at_[b]);
    if (log_at_[a] >= 0) phys_of_[log_at_[a]] = a;
    if (log_at_[b] >= 0) phys_of_[log_at_[b]] = b;
  }

  void emit_gate_at(const GateOp& op, int pa, int pb) {
    if (op.name == "cx") {
      emit_cx(pa, pb);
    } else if (op.name == "cz") {
      // CZ = H(target) CX H(target)
      GateOp h;
      h.name = "h";
      h.qubits = {pb};
      result_.circuit.ops.push_back(h);
      emit_cx(pa, pb);
      result_.circuit.ops.push_back(h);
    } else if (op.name == "cp") {
      const double theta = op.params.at(0);
      emit_cx(pa, pb);
      emit_rz(-theta / 2.0, pb);
      emit_cx(pa, pb);
      emit_rz(theta / 2.0, pb);
      emit_rz(theta / 2.0, pa);
    } else if (op.name == "swap") {
      // A logical SWAP is realized for free by exchanging the mapping.
      swap_mapping(pa, pb);
    } else if (op.matrix.size() != 0) {
      GateOp out = op;
      out.qubits = {pa, pb};
      out.is_internode = topo_.is_link(pa, pb);
      result_.circuit.ops.push_back(std::move(out));
    } else {
      throw std::invalid_argument("route: unsupported two-qubit gate " + op.name);
    }
  }

  void finalize_stats() {
    roofline::CircuitStats stats;
    for (const auto& op : result_.circuit.ops) {
      if (op.arity() == 1) {
        stats.n_1q += 1;
      } else {
        stats.n_2q += op.weight;
        if (op.is_internode) stats.n_comm += op.weight;
      }
    }
    const auto layers = schedule_asap(result_.circuit);
    stats.depth = schedule_depth(layers);
    if (stats.depth > 0) {
      stats.gate_density = (stats.n_1q + 2.0 * stats.n_2q) /
                           (static_cast<double>(stats.depth) * result_.circuit.n_qubits);
    }
    result_.stats = stats;
  }

  const Circuit& logical_;
  const NodeTopology& topo_;
  std::vector<std::vector<int>> dist_;
  std::vector<int> phys_of_;
  std::vector<int> log_at_;
  std::vector<int> two_qubit_ops_;
  RoutedCircuit result_;
};

}  // namespace

RoutedCircuit route(const Circuit& logical, const NodeTopology& topology,
                    std::vector<int> initial_layout) {
  if (initial_layout.empty()) {
    initial_layout.resize(logical.n_qubits);
    std::iota(initial_layout.begin(), initial_layout.end(), 0);
  }
  const bool layout_usable = static_cast<int>(initial_layout.size()) == logical.n_qubits &&
                             std::all_of(initial_layout.begin(), initial_layout.end(),
                                         [&](int p) { return p >= 0 && p < topology.n_qubits; });
  if (topology.has_link && layout_usable) {
    logical.check_indices();
    Circuit folded = fold_cross_fanins(logical, topology, initial_layout);
    GreedyRouter router(folded, topology, std::move(initial_layout));
    return router.run();
  }
  GreedyRouter router(logical, topology, std::move(initial_layout));
  return router.run();
}

}  // namespace mnqc::bench
