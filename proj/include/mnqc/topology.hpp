#pragma once

#include <utility>
#include <vector>

namespace mnqc::bench {

// Physical connectivity: one or two rings of qubits, optionally joined by a
// single internode edge.  The two-node device of interest is two 5-rings with
// the link between qubits 4 and 5.
struct NodeTopology {
  int n_qubits = 0;
  std::vector<std::pair<int, int>> edges;  // includes the link edge if any
  bool has_link = false;
  std::pair<int, int> link_edge{-1, -1};

  static NodeTopology two_ring(int ring_size = 5);    // 2*ring_size qubits, link (r-1, r)
  static NodeTopology single_ring(int ring_size = 5);  // one node, no link

  bool is_edge(int a, int b) const;
  bool is_link(int a, int b) const;
  int node_of(int q) const { return has_link && q >= n_qubits / 2 ? 1 : 0; }
  std::vector<std::vector<int>> adjacency() const;
  // All-pairs shortest-path distances (BFS); link edge counts as one hop.
  std::vector<std::vector<int>> distances() const;
};

}  // namespace mnqc::bench
