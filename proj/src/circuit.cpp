#include "mnqc/circuit.hpp"

#include <stdexcept>

#include "mnqc/gates.hpp"

namespace mnqc::bench {

Matrix gate_matrix(const GateOp& op) {
  if (op.matrix.size() != 0) return op.matrix;
  const auto need = [&](size_t n) {
    if (op.params.size() != n) {
      throw std::invalid_argument("gate " + op.name + ": wrong parameter count");
    }
  };
  if (op.name == "h") return gates::h();
  if (op.name == "x") return gates::x();
  if (op.name == "y") return gates::y();
  if (op.name == "z") return gates::z();
  if (op.name == "s") return gates::s();
  if (op.name == "sdg") return gates::sdg();
  if (op.name == "t") return gates::t();
  if (op.name == "tdg") return gates::tdg();
  if (op.name == "rx") { need(1); return gates::rx(op.params[0]); }
  if (op.name == "ry") { need(1); return gates::ry(op.params[0]); }
  if (op.name == "rz") { need(1); return gates::rz(op.params[0]); }
  if (op.name == "phase") { need(1); return gates::phase(op.params[0]); }
  if (op.name == "cx") return gates::cx();
  if (op.name == "cz") return gates::cz();
  if (op.name == "cp") { need(1); return gates::cp(op.params[0]); }
  if (op.name == "swap") return gates::swap2();
  throw std::invalid_argument("unknown gate name: " + op.name);
}

void Circuit::add(const std::string& gate, std::vector<int> qubits, std::vector<double> params) {
  GateOp op;
  op.name = gate;
  op.qubits = std::move(qubits);
  op.params = std::move(params);
  gate_matrix(op);  // validate name/params eagerly
  ops.push_back(std::move(op));
}

void Circuit::add_matrix_gate(const std::string& gate, std::vector<int> qubits, Matrix m,
                              int weight) {
  GateOp op;
  op.name = gate;
  op.qubits = std::move(qubits);
  op.matrix = std::move(m);
  op.weight = weight;
  const long want = 1L << op.qubits.size();
  if (op.matrix.rows() != want || op.matrix.cols() != want) {
    throw std::invalid_argument("matrix gate " + gate + ": dimension mismatch");
  }
  ops.push_back(std::move(op));
}

void Circuit::check_indices() const {
  for (const auto& op : ops) {
    if (op.qubits.empty()) throw std::invalid_argument("gate " + op.name + ": no targets");
    for (int q : op.qubits) {
      if (q < 0 || q >= n_qubits) throw std::invalid_argument("gate " + op.name + ": bad index");
    }
  }
}

std::vector<ScheduleLayer> schedule_asap(const Circuit& circuit) {
  circuit.check_indices();
  std::vector<ScheduleLayer> layers;
  std::vector<int> next_free(circuit.n_qubits, 0);
  for (int idx = 0; idx < static_cast<int>(circuit.ops.size()); ++idx) {
    const GateOp& op = circuit.ops[idx];
    int start = 0;
    if (op.is_internode) {
      for (int q = 0; q < circuit.n_qubits; ++q) start = std::max(start, next_free[q]);
    } else {
      for (int q : op.qubits) start = std::max(start, next_free[q]);
      // Never share a layer with an internode gate.
      while (start < static_cast<int>(layers.size()) && layers[start].internode) ++start;
    }
    if (start == static_cast<int>(layers.size())) layers.push_back({});
    ScheduleLayer& layer = layers[start];
    layer.op_indices.push_back(idx);
    layer.weight = std::max(layer.weight, op.weight);
    if (op.is_internode) {
      layer.internode = true;
      for (int q = 0; q < circuit.n_qubits; ++q) next_free[q] = start + 1;
    } else {
      for (int q : op.qubits) next_free[q] = start + 1;
    }
  }
  return layers;
}

int schedule_depth(const std::vector<ScheduleLayer>& layers) {
  int depth = 0;
  for (const auto& layer : layers) depth += layer.weight;
  return depth;
}

}  // namespace mnqc::bench
