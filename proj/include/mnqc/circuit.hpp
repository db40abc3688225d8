#pragma once

#include <map>
#include <string>
#include <vector>

#include "mnqc/density_matrix.hpp"

namespace mnqc::bench {

// One gate application.  `matrix` is stored explicitly for generated
// unitaries (QV blocks, controlled-U kickback gates) and derived from
// (name, params) for named gates.  `weight` is the gate's cost in
// CX-equivalent slots (3 for an arbitrary two-qubit block).
struct GateOp {
  std::string name;
  std::vector<int> qubits;  // control first for controlled gates
  std::vector<double> params;
  Matrix matrix;  // empty when derived from name
  bool is_internode = false;
  int weight = 1;

  int arity() const { return static_cast<int>(qubits.size()); }
};

// Unitary for the op in the (control, target) ordering of its qubit list.
Matrix gate_matrix(const GateOp& op);

struct Circuit {
  int n_qubits = 0;
  std::string name;
  std::vector<GateOp> ops;
  std::map<std::string, std::string> metadata;

  Circuit() = default;
  Circuit(int n, std::string circuit_name) : n_qubits(n), name(std::move(circuit_name)) {}

  void add(const std::string& gate, std::vector<int> qubits, std::vector<double> params = {});
  void add_matrix_gate(const std::string& gate, std::vector<int> qubits, Matrix m, int weight = 1);
  void check_indices() const;  // throws when any index is out of range
};

// One time step of the layered execution model.  Internode gates run in
// exclusive layers (every other qubit idles for the link latency); local
// layers last `weight` local-gate slots.
struct ScheduleLayer {
  std::vector<int> op_indices;
  bool internode = false;
  int weight = 1;
};

// List scheduling in program order: each op starts as soon as its qubits are
// free; an internode op waits for the whole device and blocks it.
std::vector<ScheduleLayer> schedule_asap(const Circuit& circuit);

// Total depth in local-gate slots (sum of layer weights).
int schedule_depth(const std::vector<ScheduleLayer>& layers);

}  // namespace mnqc::bench
