#pragma once

#include <vector>

#include "mnqc/circuit.hpp"
#include "mnqc/roofline.hpp"
#include "mnqc/topology.hpp"

namespace mnqc::bench {

struct RoutedCircuit {
  Circuit circuit;  // lowered to one-qubit gates, CX, and opaque two-qubit blocks
  roofline::CircuitStats stats;
  std::vector<int> initial_layout;  // logical qubit -> physical qubit
  std::vector<int> final_layout;
  NodeTopology topology;
};

// Maps a logical circuit onto the topology with greedy SWAP insertion
// (lookahead 1, deterministic tie-breaks) and lowers it: CP becomes
// 2 CX + 3 RZ, SWAP becomes 3 CX; opaque two-qubit blocks keep their
// CX-equivalent weight.  Stats count the lowered circuit; n_comm is the
// CX-equivalent count on the internode edge.
RoutedCircuit route(const Circuit& logical, const NodeTopology& topology,
                    std::vector<int> initial_layout = {});

}  // namespace mnqc::bench
