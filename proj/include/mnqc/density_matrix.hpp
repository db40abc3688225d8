#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "mnqc/constants.hpp"
#include "mnqc/hilbert.hpp"

namespace mnqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Whether a density matrix carries full trace 1 or the (sub-unit) trace of a
// conditional branch that has not been renormalized.
enum class TraceFlag { kNormalized, kSubnormalized };

// Dense density matrix over an explicit tensor-product layout.  Construction
// performs cheap shape checks only; the expensive physicality checks
// (Hermiticity / trace / positivity) are available through validate() and are
// exercised by the test-suite property checks rather than on every operation.
class DensityMatrix {
 public:
  // Empty placeholder (one trivial subsystem, zero trace) so result structs
  // can be default-constructed before being filled.
  DensityMatrix() : layout_(), data_(Matrix::Zero(1, 1)), flag_(TraceFlag::kSubnormalized) {}

  DensityMatrix(HilbertLayout layout, Matrix data, TraceFlag flag = TraceFlag::kNormalized);

  static DensityMatrix pure(const HilbertLayout& layout, const Vector& psi);
  static DensityMatrix basis_state(const HilbertLayout& layout, const std::vector<int>& levels);

  const HilbertLayout& layout() const { return layout_; }
  const Matrix& data() const { return data_; }
  Matrix& mutable_data() { return data_; }
  TraceFlag trace_flag() const { return flag_; }
  void set_trace_flag(TraceFlag f) { flag_ = f; }
  long dim() const { return data_.rows(); }

  double trace_real() const { return data_.trace().real(); }

  // Returns a normalized copy; throws if the trace is numerically zero.
  DensityMatrix normalized(double zero_tol = 1e-300) const;

  // Throws std::runtime_error describing the first violated physicality
  // condition: Hermiticity, unit trace (normalized states only), positivity.
  void validate(double herm_tol = tol::kHermiticity, double trace_tol = tol::kTrace,
                double positivity_tol = tol::kPositivity) const;

  double purity() const { return (data_ * data_).trace().real(); }

 private:
  HilbertLayout layout_;
  Matrix data_;
  TraceFlag flag_;
};

// --- Composition and reduction ------------------------------------------------

// Kronecker product of states (a first, i.e. most significant).
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Traces out every subsystem not listed in `keep`; the kept subsystems stay in
// their current relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Reorders subsystems so that subsystem perm[k] of the input becomes
// subsystem k of the output.
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm);

// --- In-place linear maps on subsystems ---------------------------------------

// rho -> (U x I) rho (U x I)^dagger with U acting on `targets` (in the given
// order, first target most significant within U).  U must be unitary within
// `unitarity_tol`; pass a negative tolerance to skip the check (used by
// performance-critical inner loops that apply pre-validated gates).
void apply_unitary_in_place(DensityMatrix& rho, const Matrix& u, const std::vector<int>& targets,
                            double unitarity_tol = tol::kUnitarity);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u,
                            const std::vector<int>& targets,
                            double unitarity_tol = tol::kUnitarity);

// Applies one Kraus operator: rho -> K rho K^dagger on `targets`.
void apply_kraus_term_in_place(DensityMatrix& rho, const Matrix& k, const std::vector<int>& targets,
                               Matrix& scratch);

// rho -> sum_j K_j rho K_j^dagger on `targets`.
DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<Matrix>& kraus,
                          const std::vector<int>& targets);

// Projects onto `projector` acting on `targets` without renormalizing; the
// result carries TraceFlag::kSubnormalized.
DensityMatrix project(const DensityMatrix& rho, const Matrix& projector,
                      const std::vector<int>& targets);

// Expectation value tr(rho (A x I)) with A on `targets`.
Complex expectation(const DensityMatrix& rho, const Matrix& a, const std::vector<int>& targets);

// Fidelity <psi|rho|psi> against a pure state on the full space.
double state_fidelity(const DensityMatrix& rho, const Vector& psi);

}  // namespace mnqc
