#include "mnqc/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mnqc {
namespace {

// Enumeration tables for a split of the layout into `targets` and the rest.
// full_index(t, r) = target_offsets[t] + rest_offsets[r].
struct SubsystemSplit {
  long target_dim = 1;
  long rest_dim = 1;
  std::vector<long> target_offsets;
  std::vector<long> rest_offsets;
};

SubsystemSplit make_split(const HilbertLayout& layout, const std::vector<int>& targets) {
  const int n = layout.subsystem_count();
  std::vector<bool> is_target(static_cast<std::size_t>(n), false);
  for (int t : targets) {
    if (t < 0 || t >= n) throw std::out_of_range("subsystem target index out of range");
    if (is_target[static_cast<std::size_t>(t)])
      throw std::invalid_argument("duplicate subsystem target index");
    is_target[static_cast<std::size_t>(t)] = true;
  }
  const auto strides = layout.strides();

  SubsystemSplit split;
  for (int t : targets) split.target_dim *= layout.dim(t);
  split.rest_dim = layout.total_dim() / split.target_dim;

  // Offsets of the target multi-index, first listed target most significant.
  split.target_offsets.assign(static_cast<std::size_t>(split.target_dim), 0);
  {
    long block = split.target_dim;
    for (int t : targets) {
      const int d = layout.dim(t);
      block /= d;
      for (long idx = 0; idx < split.target_dim; ++idx) {
        const long digit = (idx / block) % d;
        split.target_offsets[static_cast<std::size_t>(idx)] += digit * strides[static_cast<std::size_t>(t)];
      }
    }
  }

  // Offsets of the remaining subsystems in layout order.
  split.rest_offsets.assign(static_cast<std::size_t>(split.rest_dim), 0);
  {
    long block = split.rest_dim;
    for (int k = 0; k < n; ++k) {
      if (is_target[static_cast<std::size_t>(k)]) continue;
      const int d = layout.dim(k);
      block /= d;
      for (long idx = 0; idx < split.rest_dim; ++idx) {
        const long digit = (idx / block) % d;
        split.rest_offsets[static_cast<std::size_t>(idx)] += digit * strides[static_cast<std::size_t>(k)];
      }
    }
  }
  return split;
}

void check_operator_shape(const Matrix& m, long target_dim, const char* what) {
  if (m.rows() != target_dim || m.cols() != target_dim) {
    std::ostringstream os;
    os << what << ": operator is " << m.rows() << "x" << m.cols() << " but targets span dimension "
       << target_dim;
    throw std::invalid_argument(os.str());
  }
}

// out = (M x I) * in, with M addressing the target factor of the row space.
void left_multiply(const Matrix& in, Matrix& out, const Matrix& m, const SubsystemSplit& split) {
  const long n = in.rows();
  const long dt = split.target_dim;
  out.resize(n, n);
  std::vector<Complex> v(static_cast<std::size_t>(dt));
  for (long c = 0; c < n; ++c) {
    const Complex* col = in.col(c).data();
    Complex* ocol = out.col(c).data();
    for (long r = 0; r < split.rest_dim; ++r) {
      const long base = split.rest_offsets[static_cast<std::size_t>(r)];
      for (long t = 0; t < dt; ++t)
        v[static_cast<std::size_t>(t)] = col[base + split.target_offsets[static_cast<std::size_t>(t)]];
      for (long t = 0; t < dt; ++t) {
        Complex acc(0.0, 0.0);
        for (long u = 0; u < dt; ++u) acc += m(t, u) * v[static_cast<std::size_t>(u)];
        ocol[base + split.target_offsets[static_cast<std::size_t>(t)]] = acc;
      }
    }
  }
}

// out = in * (M x I)^dagger, addressing the target factor of the column space.
void right_multiply_adjoint(const Matrix& in, Matrix& out, const Matrix& m,
                            const SubsystemSplit& split) {
  const long n = in.rows();
  const long dt = split.target_dim;
  out.resize(n, n);
  // Column gather: for each rest index r, columns {base + toff[t]} form a block.
  std::vector<const Complex*> src(static_cast<std::size_t>(dt));
  std::vector<Complex*> dst(static_cast<std::size_t>(dt));
  for (long r = 0; r < split.rest_dim; ++r) {
    const long base = split.rest_offsets[static_cast<std::size_t>(r)];
    for (long t = 0; t < dt; ++t) {
      const long c = base + split.target_offsets[static_cast<std::size_t>(t)];
      src[static_cast<std::size_t>(t)] = in.col(c).data();
      dst[static_cast<std::size_t>(t)] = out.col(c).data();
    }
    for (long row = 0; row < n; ++row) {
      for (long t = 0; t < dt; ++t) {
        Complex acc(0.0, 0.0);
        for (long u = 0; u < dt; ++u)
          acc += src[static_cast<std::size_t>(u)][row] * std::conj(m(t, u));
        dst[static_cast<std::size_t>(t)][row] = acc;
      }
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(HilbertLayout layout, Matrix data, TraceFlag flag)
    : layout_(std::move(layout)), data_(std::move(data)), flag_(flag) {
  if (data_.rows() != data_.cols())
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  if (data_.rows() != layout_.total_dim())
    throw std::invalid_argument("DensityMatrix: matrix dimension does not match layout");
}

DensityMatrix DensityMatrix::pure(const HilbertLayout& layout, const Vector& psi) {
  if (psi.size() != layout.total_dim())
    throw std::invalid_argument("DensityMatrix::pure: vector dimension does not match layout");
  return DensityMatrix(layout, psi * psi.adjoint(), TraceFlag::kNormalized);
}

DensityMatrix DensityMatrix::basis_state(const HilbertLayout& layout, const std::vector<int>& levels) {
  Vector psi = Vector::Zero(layout.total_dim());
  psi(layout.flatten(levels)) = Complex(1.0, 0.0);
  return pure(layout, psi);
}

DensityMatrix DensityMatrix::normalized(double zero_tol) const {
  const double tr = trace_real();
  if (std::abs(tr) < zero_tol)
    throw std::runtime_error("DensityMatrix::normalized: trace is numerically zero");
  return DensityMatrix(layout_, data_ / tr, TraceFlag::kNormalized);
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double positivity_tol) const {
  const double herm = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian: max deviation " << herm;
    throw std::runtime_error(os.str());
  }
  if (flag_ == TraceFlag::kNormalized && std::abs(trace_real() - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "density matrix trace " << trace_real() << " deviates from 1";
    throw std::runtime_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (data_ + data_.adjoint()),
                                           Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < positivity_tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min_eig;
    throw std::runtime_error(os.str());
  }
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  const long na = a.dim(), nb = b.dim();
  Matrix out(na * nb, na * nb);
  for (long i = 0; i < na; ++i)
    for (long j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.data()(i, j) * b.data();
  const TraceFlag flag = (a.trace_flag() == TraceFlag::kSubnormalized ||
                          b.trace_flag() == TraceFlag::kSubnormalized)
                             ? TraceFlag::kSubnormalized
                             : TraceFlag::kNormalized;
  return DensityMatrix(HilbertLayout(std::move(dims)), std::move(out), flag);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  // Trace over the complement of `keep`; kept subsystems preserve their order.
  const int n = rho.layout().subsystem_count();
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::out_of_range("partial_trace: subsystem index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  std::vector<int> keep_sorted;
  std::vector<int> traced;
  for (int k = 0; k < n; ++k) (kept[static_cast<std::size_t>(k)] ? keep_sorted : traced).push_back(k);

  // Split with "targets" = traced subsystems, so rest enumerates kept ones.
  const SubsystemSplit split = make_split(rho.layout(), traced);
  Matrix out = Matrix::Zero(split.rest_dim, split.rest_dim);
  const Matrix& in = rho.data();
  for (long j = 0; j < split.rest_dim; ++j) {
    const long cj = split.rest_offsets[static_cast<std::size_t>(j)];
    for (long i = 0; i < split.rest_dim; ++i) {
      const long ci = split.rest_offsets[static_cast<std::size_t>(i)];
      Complex acc(0.0, 0.0);
      for (long t = 0; t < split.target_dim; ++t) {
        const long o = split.target_offsets[static_cast<std::size_t>(t)];
        acc += in(ci + o, cj + o);
      }
      out(i, j) = acc;
    }
  }
  std::vector<int> dims;
  dims.reserve(keep_sorted.size());
  for (int k : keep_sorted) dims.push_back(rho.layout().dim(k));
  return DensityMatrix(HilbertLayout(std::move(dims)), std::move(out), rho.trace_flag());
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm) {
  const int n = rho.layout().subsystem_count();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_subsystems: permutation length mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("permute_subsystems: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<int> new_dims(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) new_dims[static_cast<std::size_t>(k)] = rho.layout().dim(perm[static_cast<std::size_t>(k)]);
  HilbertLayout new_layout{new_dims};

  const auto old_strides = rho.layout().strides();
  const auto new_strides = new_layout.strides();
  const long total = rho.dim();
  std::vector<long> map(static_cast<std::size_t>(total));
  for (long idx = 0; idx < total; ++idx) {
    long out_idx = 0;
    for (int k = 0; k < n; ++k) {
      const int src = perm[static_cast<std::size_t>(k)];
      const long digit = (idx / old_strides[static_cast<std::size_t>(src)]) % rho.layout().dim(src);
      out_idx += digit * new_strides[static_cast<std::size_t>(k)];
    }
    map[static_cast<std::size_t>(idx)] = out_idx;
  }
  Matrix out(total, total);
  for (long j = 0; j < total; ++j)
    for (long i = 0; i < total; ++i)
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = rho.data()(i, j);
  return DensityMatrix(std::move(new_layout), std::move(out), rho.trace_flag());
}

void apply_unitary_in_place(DensityMatrix& rho, const Matrix& u, const std::vector<int>& targets,
                            double unitarity_tol) {
  const SubsystemSplit split = make_split(rho.layout(), targets);
  check_operator_shape(u, split.target_dim, "apply_unitary");
  if (unitarity_tol >= 0.0) {
    const double dev = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (dev > unitarity_tol) {
      std::ostringstream os;
      os << "apply_unitary: operator deviates from unitarity by " << dev;
      throw std::invalid_argument(os.str());
    }
  }
  Matrix tmp;
  left_multiply(rho.data(), tmp, u, split);
  right_multiply_adjoint(tmp, rho.mutable_data(), u, split);
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u,
                            const std::vector<int>& targets, double unitarity_tol) {
  DensityMatrix out = rho;
  apply_unitary_in_place(out, u, targets, unitarity_tol);
  return out;
}

void apply_kraus_term_in_place(DensityMatrix& rho, const Matrix& k,
                               const std::vector<int>& targets, Matrix& scratch) {
  const SubsystemSplit split = make_split(rho.layout(), targets);
  check_operator_shape(k, split.target_dim, "apply_kraus_term");
  left_multiply(rho.data(), scratch, k, split);
  right_multiply_adjoint(scratch, rho.mutable_data(), k, split);
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<Matrix>& kraus,
                          const std::vector<int>& targets) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty Kraus list");
  const SubsystemSplit split = make_split(rho.layout(), targets);
  for (const Matrix& k : kraus) check_operator_shape(k, split.target_dim, "apply_kraus");
  Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
  Matrix tmp, term;
  for (const Matrix& k : kraus) {
    left_multiply(rho.data(), tmp, k, split);
    right_multiply_adjoint(tmp, term, k, split);
    acc += term;
  }
  return DensityMatrix(rho.layout(), std::move(acc), rho.trace_flag());
}

DensityMatrix project(const DensityMatrix& rho, const Matrix& projector,
                      const std::vector<int>& targets) {
  const SubsystemSplit split = make_split(rho.layout(), targets);
  check_operator_shape(projector, split.target_dim, "project");
  Matrix tmp, out;
  left_multiply(rho.data(), tmp, projector, split);
  right_multiply_adjoint(tmp, out, projector, split);
  return DensityMatrix(rho.layout(), std::move(out), TraceFlag::kSubnormalized);
}

Complex expectation(const DensityMatrix& rho, const Matrix& a, const std::vector<int>& targets) {
  const SubsystemSplit split = make_split(rho.layout(), targets);
  check_operator_shape(a, split.target_dim, "expectation");
  // tr(rho (A x I)) = sum_{t,t',r} A(t',t) rho(toff[t]+roff[r], toff[t']+roff[r]).
  Complex acc(0.0, 0.0);
  const Matrix& in = rho.data();
  for (long t = 0; t < split.target_dim; ++t)
    for (long u = 0; u < split.target_dim; ++u) {
      if (a(u, t) == Complex(0.0, 0.0)) continue;
      Complex part(0.0, 0.0);
      for (long r = 0; r < split.rest_dim; ++r) {
        const long off = split.rest_offsets[static_cast<std::size_t>(r)];
        part += in(split.target_offsets[static_cast<std::size_t>(t)] + off,
                   split.target_offsets[static_cast<std::size_t>(u)] + off);
      }
      acc += a(u, t) * part;
    }
  return acc;
}

double state_fidelity(const DensityMatrix& rho, const Vector& psi) {
  if (psi.size() != rho.dim())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  return (psi.adjoint() * rho.data() * psi)(0, 0).real();
}

}  // namespace mnqc
