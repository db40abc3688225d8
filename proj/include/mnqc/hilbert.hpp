#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace mnqc {

// Describes a tensor-product Hilbert space as an ordered list of subsystem
// dimensions.  Subsystem 0 is the most significant factor: the composite
// basis index of |i_0, i_1, ..., i_{k-1}> is
//   i_0 * (d_1 * ... * d_{k-1}) + i_1 * (d_2 * ... * d_{k-1}) + ... + i_{k-1},
// matching the index convention of a Kronecker product A_0 (x) A_1 (x) ...
class HilbertLayout {
 public:
  HilbertLayout() = default;
  explicit HilbertLayout(std::vector<int> dims) : dims_(std::move(dims)) {
    for (int d : dims_) {
      if (d < 1) throw std::invalid_argument("HilbertLayout: dimensions must be >= 1");
    }
  }
  HilbertLayout(std::initializer_list<int> dims) : HilbertLayout(std::vector<int>(dims)) {}

  static HilbertLayout qubits(int n) {
    if (n < 0) throw std::invalid_argument("HilbertLayout::qubits: n must be >= 0");
    return HilbertLayout(std::vector<int>(static_cast<std::size_t>(n), 2));
  }

  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_.at(static_cast<std::size_t>(k)); }
  const std::vector<int>& dims() const { return dims_; }

  long total_dim() const {
    long t = 1;
    for (int d : dims_) t *= d;
    return t;
  }

  // Stride of each subsystem in the composite basis index.
  std::vector<long> strides() const {
    std::vector<long> s(dims_.size(), 1);
    for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k)
      s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k) + 1] * dims_[static_cast<std::size_t>(k) + 1];
    return s;
  }

  // Composite index of a multi-index (one entry per subsystem).
  long flatten(const std::vector<int>& multi) const {
    if (multi.size() != dims_.size())
      throw std::invalid_argument("HilbertLayout::flatten: wrong multi-index length");
    long idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (multi[k] < 0 || multi[k] >= dims_[k])
        throw std::out_of_range("HilbertLayout::flatten: index out of range");
      idx = idx * dims_[k] + multi[k];
    }
    return idx;
  }

  friend bool operator==(const HilbertLayout& a, const HilbertLayout& b) {
    return a.dims_ == b.dims_;
  }
  friend bool operator!=(const HilbertLayout& a, const HilbertLayout& b) { return !(a == b); }

 private:
  std::vector<int> dims_;
};

}  // namespace mnqc
