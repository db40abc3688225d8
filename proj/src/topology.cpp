#include "mnqc/topology.hpp"

#include <deque>
#include <stdexcept>

namespace mnqc::bench {

namespace {

void add_ring(NodeTopology& topo, int first, int size) {
  for (int i = 0; i < size; ++i) {
    topo.edges.emplace_back(first + i, first + (i + 1) % size);
  }
}

}  // namespace

NodeTopology NodeTopology::two_ring(int ring_size) {
  if (ring_size < 3) throw std::invalid_argument("two_ring: ring size must be >= 3");
  NodeTopology topo;
  topo.n_qubits = 2 * ring_size;
  add_ring(topo, 0, ring_size);
  add_ring(topo, ring_size, ring_size);
  topo.has_link = true;
  topo.link_edge = {ring_size - 1, ring_size};
  topo.edges.push_back(topo.link_edge);
  return topo;
}

NodeTopology NodeTopology::single_ring(int ring_size) {
  if (ring_size < 3) throw std::invalid_argument("single_ring: ring size must be >= 3");
  NodeTopology topo;
  topo.n_qubits = ring_size;
  add_ring(topo, 0, ring_size);
  return topo;
}

bool NodeTopology::is_edge(int a, int b) const {
  for (const auto& [u, v] : edges) {
    if ((u == a && v == b) || (u == b && v == a)) return true;
  }
  return false;
}

bool NodeTopology::is_link(int a, int b) const {
  return has_link && ((link_edge.first == a && link_edge.second == b) ||
                      (link_edge.first == b && link_edge.second == a));
}

std::vector<std::vector<int>> NodeTopology::adjacency() const {
  std::vector<std::vector<int>> adj(n_qubits);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<std::vector<int>> NodeTopology::distances() const {
  const auto adj = adjacency();
  std::vector<std::vector<int>> dist(n_qubits, std::vector<int>(n_qubits, -1));
  for (int s = 0; s < n_qubits; ++s) {
    std::deque<int> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int v = 0; v < n_qubits; ++v) {
      if (dist[s][v] < 0) throw std::runtime_error("topology is not connected");
    }
  }
  return dist;
}

}  // namespace mnqc::bench
