#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mnqc/bosonic.hpp"
#include "mnqc/channel.hpp"
#include "mnqc/density_matrix.hpp"
#include "mnqc/gates.hpp"
#include "mnqc/hilbert.hpp"
#include "mnqc/rng.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using mnqc::BellLabel;
using mnqc::Complex;
using mnqc::DensityMatrix;
using mnqc::HilbertLayout;
using mnqc::Matrix;
using mnqc::QuantumChannel;
using mnqc::TraceFlag;
using mnqc::Vector;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

DensityMatrix random_qubit_state(int n_qubits, std::mt19937_64& gen) {
  return DensityMatrix(HilbertLayout::qubits(n_qubits),
                       oracle::random_density(1L << n_qubits, gen));
}

}  // namespace

TEST_CASE("HilbertLayout indexing") {
  const HilbertLayout layout({2, 3, 4});
  REQUIRE(layout.subsystem_count() == 3);
  REQUIRE(layout.total_dim() == 24);
  REQUIRE(layout.dim(1) == 3);

  const std::vector<long> strides = layout.strides();
  REQUIRE(strides == std::vector<long>({12, 4, 1}));

  // flatten agrees with the stride expansion for every multi-index.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 4; ++c)
        REQUIRE(layout.flatten({a, b, c}) == a * 12 + b * 4 + c);

  REQUIRE(HilbertLayout::qubits(4).total_dim() == 16);
  REQUIRE(HilbertLayout::qubits(0).total_dim() == 1);
  REQUIRE(layout == HilbertLayout({2, 3, 4}));
  REQUIRE(layout != HilbertLayout({2, 3, 2}));

  REQUIRE_THROWS_AS(HilbertLayout({2, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(layout.flatten({1, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(layout.flatten({1, 3, 0}), std::out_of_range);
  REQUIRE_THROWS_AS(HilbertLayout::qubits(-1), std::invalid_argument);
}

TEST_CASE("DensityMatrix construction and validation") {
  const HilbertLayout two_qubits = HilbertLayout::qubits(2);

  SECTION("basis states") {
    const DensityMatrix rho = DensityMatrix::basis_state(two_qubits, {1, 0});
    REQUIRE(rho.dim() == 4);
    REQUIRE_THAT(rho.data()(2, 2).real(), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(rho.trace_real(), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(rho.purity(), WithinAbs(1.0, 1e-15));
    REQUIRE(rho.trace_flag() == TraceFlag::kNormalized);
    rho.validate();
  }

  SECTION("pure states") {
    Vector psi = Vector::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::pure(two_qubits, psi);
    REQUIRE_THAT(rho.data()(0, 3).real(), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(rho.purity(), WithinAbs(1.0, 1e-14));
    rho.validate();
  }

  SECTION("shape errors") {
    REQUIRE_THROWS(DensityMatrix(two_qubits, Matrix::Identity(3, 3)));
    REQUIRE_THROWS(DensityMatrix(two_qubits, Matrix::Zero(4, 3)));
  }

  SECTION("validate rejects unphysical matrices") {
    Matrix bad = Matrix::Identity(4, 4) / 4.0;
    bad(0, 1) = 0.3;  // not Hermitian
    REQUIRE_THROWS_AS(DensityMatrix(two_qubits, bad).validate(), std::runtime_error);

    Matrix wrong_trace = Matrix::Identity(4, 4);
    REQUIRE_THROWS_AS(DensityMatrix(two_qubits, wrong_trace).validate(), std::runtime_error);

    Matrix negative = Matrix::Zero(4, 4);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    REQUIRE_THROWS_AS(DensityMatrix(two_qubits, negative).validate(), std::runtime_error);
  }

  SECTION("normalized") {
    Matrix half = Matrix::Zero(2, 2);
    half(0, 0) = 0.5;
    const DensityMatrix sub(HilbertLayout::qubits(1), half, TraceFlag::kSubnormalized);
    const DensityMatrix norm = sub.normalized();
    REQUIRE_THAT(norm.trace_real(), WithinAbs(1.0, 1e-15));
    REQUIRE(norm.trace_flag() == TraceFlag::kNormalized);

    const DensityMatrix zero(HilbertLayout::qubits(1), Matrix::Zero(2, 2),
                             TraceFlag::kSubnormalized);
    REQUIRE_THROWS(zero.normalized());
  }

  SECTION("default constructed placeholder") {
    const DensityMatrix empty;
    REQUIRE(empty.dim() == 1);
    REQUIRE(empty.trace_flag() == TraceFlag::kSubnormalized);
    REQUIRE_THAT(empty.trace_real(), WithinAbs(0.0, 1e-300));
  }
}

TEST_CASE("tensor_product matches an index-loop Kronecker product") {
  std::mt19937_64 gen(101);

  SECTION("basis states compose positionally") {
    const DensityMatrix a = DensityMatrix::basis_state(HilbertLayout::qubits(1), {1});
    const DensityMatrix b = DensityMatrix::basis_state(HilbertLayout::qubits(2), {0, 1});
    const DensityMatrix ab = tensor_product(a, b);
    REQUIRE(ab.layout() == HilbertLayout::qubits(3));
    REQUIRE_THAT(ab.data()(5, 5).real(), WithinAbs(1.0, 1e-15));  // |1,0,1> = index 5
  }

  SECTION("trivial factor is neutral") {
    const DensityMatrix one(HilbertLayout({1}), Matrix::Identity(1, 1));
    const DensityMatrix rho = random_qubit_state(2, gen);
    REQUIRE(max_abs_diff(tensor_product(one, rho).data(), rho.data()) < 1e-15);
  }

  SECTION("random factors of unequal dimension") {
    const Matrix a = oracle::random_density(2, gen);
    const Matrix b = oracle::random_density(3, gen);
    const DensityMatrix prod = tensor_product(DensityMatrix(HilbertLayout({2}), a),
                                              DensityMatrix(HilbertLayout({3}), b));
    REQUIRE(prod.layout() == HilbertLayout({2, 3}));
    REQUIRE(max_abs_diff(prod.data(), oracle::kron(a, b)) < 1e-14);
  }
}

TEST_CASE("partial_trace") {
  std::mt19937_64 gen(202);

  SECTION("recovers the factors of a product state") {
    const Matrix a = oracle::random_density(2, gen);
    const Matrix b = oracle::random_density(4, gen);
    const DensityMatrix prod = tensor_product(DensityMatrix(HilbertLayout({2}), a),
                                              DensityMatrix(HilbertLayout({4}), b));
    REQUIRE(max_abs_diff(partial_trace(prod, {0}).data(), a) < 1e-13);
    REQUIRE(max_abs_diff(partial_trace(prod, {1}).data(), b) < 1e-13);
  }

  SECTION("Bell pair reduces to the maximally mixed state") {
    const DensityMatrix bell = mnqc::bell_state(BellLabel::kPhiPlus);
    const DensityMatrix reduced = partial_trace(bell, {0});
    REQUIRE(max_abs_diff(reduced.data(), Matrix::Identity(2, 2) / 2.0) < 1e-14);
  }

  SECTION("random three-qubit state against the double-sum oracle") {
    const DensityMatrix rho = random_qubit_state(3, gen);
    REQUIRE(max_abs_diff(partial_trace(rho, {0, 2}).data(),
                         oracle::trace_out(rho.data(), 3, {1})) < 1e-13);
    REQUIRE(max_abs_diff(partial_trace(rho, {1}).data(),
                         oracle::trace_out(rho.data(), 3, {0, 2})) < 1e-13);
  }

  SECTION("invalid keep list throws") {
    const DensityMatrix rho = random_qubit_state(2, gen);
    REQUIRE_THROWS(partial_trace(rho, {2}));
  }
}

TEST_CASE("permute_subsystems") {
  SECTION("relabels basis states") {
    const HilbertLayout layout({2, 3, 4});
    const DensityMatrix rho = DensityMatrix::basis_state(layout, {1, 2, 3});
    const DensityMatrix moved = permute_subsystems(rho, {2, 0, 1});
    REQUIRE(moved.layout() == HilbertLayout({4, 2, 3}));
    const long expected = HilbertLayout({4, 2, 3}).flatten({3, 1, 2});
    REQUIRE_THAT(moved.data()(expected, expected).real(), WithinAbs(1.0, 1e-15));
  }

  SECTION("permutation followed by its inverse is the identity") {
    std::mt19937_64 gen(303);
    const DensityMatrix rho = random_qubit_state(3, gen);
    const DensityMatrix there = permute_subsystems(rho, {1, 2, 0});
    const DensityMatrix back = permute_subsystems(there, {2, 0, 1});
    REQUIRE(max_abs_diff(back.data(), rho.data()) < 1e-14);
  }

  SECTION("bad permutation throws") {
    std::mt19937_64 gen(304);
    const DensityMatrix rho = random_qubit_state(2, gen);
    REQUIRE_THROWS(permute_subsystems(rho, {0, 0}));
  }
}

TEST_CASE("apply_unitary embeds gates like the dense oracle") {
  std::mt19937_64 gen(404);

  SECTION("single-qubit X on a basis state") {
    const DensityMatrix rho = DensityMatrix::basis_state(HilbertLayout::qubits(2), {0, 0});
    const DensityMatrix flipped = apply_unitary(rho, mnqc::gates::x(), {1});
    REQUIRE_THAT(flipped.data()(1, 1).real(), WithinAbs(1.0, 1e-15));
  }

  SECTION("distant two-qubit gate on an eight-qubit register") {
    const DensityMatrix rho = random_qubit_state(8, gen);
    const DensityMatrix moved = apply_unitary(rho, mnqc::gates::cx(), {3, 7});
    const Matrix big = oracle::embed(oracle::cnot(), 8, {3, 7});
    REQUIRE(max_abs_diff(moved.data(), big * rho.data() * big.adjoint()) < 1e-12);
  }

  SECTION("reversed target order matters") {
    const DensityMatrix rho = DensityMatrix::basis_state(HilbertLayout::qubits(2), {0, 1});
    // control listed second: qubit 1 (set) controls X on qubit 0.
    const DensityMatrix out = apply_unitary(rho, mnqc::gates::cx(), {1, 0});
    REQUIRE_THAT(out.data()(3, 3).real(), WithinAbs(1.0, 1e-15));
  }

  SECTION("random unitary against the oracle") {
    const DensityMatrix rho = random_qubit_state(3, gen);
    const Matrix u = oracle::random_unitary(4, gen);
    const DensityMatrix moved = apply_unitary(rho, u, {2, 0});
    const Matrix big = oracle::embed(u, 3, {2, 0});
    REQUIRE(max_abs_diff(moved.data(), big * rho.data() * big.adjoint()) < 1e-12);
  }

  SECTION("unitarity check") {
    const DensityMatrix rho = random_qubit_state(1, gen);
    Matrix not_unitary = Matrix::Identity(2, 2) * 2.0;
    REQUIRE_THROWS(apply_unitary(rho, not_unitary, {0}));
    // A negative tolerance skips the check and applies the map as-is.
    const DensityMatrix scaled = apply_unitary(rho, not_unitary, {0}, -1.0);
    REQUIRE_THAT(scaled.trace_real(), WithinAbs(4.0, 1e-12));
  }

  SECTION("invalid target throws") {
    const DensityMatrix rho = random_qubit_state(2, gen);
    REQUIRE_THROWS(apply_unitary(rho, mnqc::gates::x(), {5}));
  }
}

TEST_CASE("apply_kraus, project and expectation") {
  std::mt19937_64 gen(505);

  SECTION("Kraus sum against the oracle") {
    const DensityMatrix rho = random_qubit_state(3, gen);
    std::vector<Matrix> kraus;
    const Matrix u1 = oracle::random_unitary(2, gen);
    const Matrix u2 = oracle::random_unitary(2, gen);
    kraus.push_back(std::sqrt(0.25) * u1);
    kraus.push_back(std::sqrt(0.75) * u2);
    const DensityMatrix out = apply_kraus(rho, kraus, {1});
    Matrix expected = Matrix::Zero(8, 8);
    for (const Matrix& k : kraus) {
      const Matrix big = oracle::embed(k, 3, {1});
      expected += big * rho.data() * big.adjoint();
    }
    REQUIRE(max_abs_diff(out.data(), expected) < 1e-13);
  }

  SECTION("projection is subnormalized") {
    const DensityMatrix rho = DensityMatrix::basis_state(HilbertLayout::qubits(1), {0});
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    const DensityMatrix branch = project(rho, plus, {0});
    REQUIRE(branch.trace_flag() == TraceFlag::kSubnormalized);
    REQUIRE_THAT(branch.trace_real(), WithinAbs(0.5, 1e-14));
  }

  SECTION("expectation values") {
    const DensityMatrix zero = DensityMatrix::basis_state(HilbertLayout::qubits(2), {0, 1});
    REQUIRE_THAT(expectation(zero, mnqc::gates::z(), {0}).real(), WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(expectation(zero, mnqc::gates::z(), {1}).real(), WithinAbs(-1.0, 1e-14));

    const DensityMatrix rho = random_qubit_state(2, gen);
    const Matrix op = oracle::random_ginibre(2, 2, gen);
    const Matrix big = oracle::embed(op, 2, {1});
    const Complex direct = (rho.data() * big).trace();
    const Complex viaapi = expectation(rho, op, {1});
    REQUIRE_THAT(std::abs(direct - viaapi), WithinAbs(0.0, 1e-13));
  }

  SECTION("state_fidelity") {
    std::mt19937_64 g2(506);
    const Vector psi = oracle::random_state_vector(8, g2);
    const DensityMatrix pure = DensityMatrix::pure(HilbertLayout::qubits(3), psi);
    REQUIRE_THAT(mnqc::state_fidelity(pure, psi), WithinAbs(1.0, 1e-13));

    const DensityMatrix rho = random_qubit_state(3, g2);
    const double direct = (psi.adjoint() * rho.data() * psi)(0).real();
    REQUIRE_THAT(mnqc::state_fidelity(rho, psi), WithinAbs(direct, 1e-13));
  }
}

TEST_CASE("standard gates match their textbook matrices") {
  REQUIRE(max_abs_diff(mnqc::gates::cx(), oracle::cnot()) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::x(), oracle::pauli(1)) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::y(), oracle::pauli(2)) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::z(), oracle::pauli(3)) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::rx(0.7), oracle::rx_gate(0.7)) < 1e-15);

  Matrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  REQUIRE(max_abs_diff(mnqc::gates::h(), h) < 1e-15);

  const double theta = 1.234;
  const Matrix cp = mnqc::gates::cp(theta);
  REQUIRE_THAT(std::abs(cp(3, 3) - std::exp(Complex(0, theta))), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(std::abs(cp(0, 0) - Complex(1, 0)), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(std::abs(cp(2, 2) - Complex(1, 0)), WithinAbs(0.0, 1e-15));

  const Matrix sw = mnqc::gates::swap2();
  REQUIRE_THAT(std::abs(sw(1, 2) - Complex(1, 0)), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(std::abs(sw(2, 1) - Complex(1, 0)), WithinAbs(0.0, 1e-15));

  // s*s = z, t*t = s, and the daggers invert.
  REQUIRE(max_abs_diff(mnqc::gates::s() * mnqc::gates::s(), mnqc::gates::z()) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::t() * mnqc::gates::t(), mnqc::gates::s()) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::s() * mnqc::gates::sdg(), Matrix::Identity(2, 2)) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::t() * mnqc::gates::tdg(), Matrix::Identity(2, 2)) < 1e-15);
  REQUIRE(max_abs_diff(mnqc::gates::phase(theta), mnqc::gates::cp(theta).block(2, 2, 2, 2)) <
          1e-15);
}

TEST_CASE("Bell helpers") {
  using mnqc::bell_fidelity;
  using mnqc::bell_state;
  using mnqc::bell_vector;

  const std::vector<BellLabel> labels = {BellLabel::kPhiPlus, BellLabel::kPhiMinus,
                                         BellLabel::kPsiPlus, BellLabel::kPsiMinus};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    REQUIRE(max_abs_diff(bell_vector(labels[i]) * bell_vector(labels[i]).adjoint(),
                         oracle::bell_vector(static_cast<int>(i)) *
                             oracle::bell_vector(static_cast<int>(i)).adjoint()) < 1e-15);
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const double f = bell_fidelity(bell_state(labels[i]), labels[j]);
      REQUIRE_THAT(f, WithinAbs(i == j ? 1.0 : 0.0, 1e-14));
    }
    REQUIRE(mnqc::bell_label_from_string(mnqc::to_string(labels[i])) == labels[i]);
  }

  const DensityMatrix werner = mnqc::werner_state(0.8, BellLabel::kPsiMinus);
  werner.validate();
  REQUIRE_THAT(bell_fidelity(werner, BellLabel::kPsiMinus), WithinAbs(0.8, 1e-14));
  REQUIRE_THAT(bell_fidelity(werner, BellLabel::kPhiPlus), WithinAbs(0.2 / 3.0, 1e-14));

  const Vector omega = mnqc::maximally_entangled_vector(2);
  REQUIRE(max_abs_diff(omega * omega.adjoint(),
                       oracle::bell_vector(0) * oracle::bell_vector(0).adjoint()) < 1e-15);

  // Maximally mixed state has fidelity 1/4 with every Bell state.
  const DensityMatrix mixed(HilbertLayout::qubits(2), Matrix::Identity(4, 4) / 4.0);
  REQUIRE_THAT(bell_fidelity(mixed, BellLabel::kPsiPlus), WithinAbs(0.25, 1e-14));
}

TEST_CASE("depolarizing channel") {
  std::mt19937_64 gen(606);

  SECTION("limits and formula") {
    const DensityMatrix rho = random_qubit_state(2, gen);
    const QuantumChannel id = mnqc::depolarizing_channel(0.0, 2);
    REQUIRE(max_abs_diff(apply_channel(rho, id, {0, 1}).data(), rho.data()) < 1e-13);

    const QuantumChannel full = mnqc::depolarizing_channel(1.0, 2);
    REQUIRE(max_abs_diff(apply_channel(rho, full, {0, 1}).data(),
                         Matrix::Identity(4, 4) / 4.0) < 1e-13);

    const double p = 0.3;
    const QuantumChannel mid = mnqc::depolarizing_channel(p, 2);
    REQUIRE(mid.is_trace_preserving());
    const Matrix expected = (1.0 - p) * rho.data() + p * Matrix::Identity(4, 4) / 4.0;
    REQUIRE(max_abs_diff(apply_channel(rho, mid, {0, 1}).data(), expected) < 1e-13);
  }

  SECTION("partial depolarizing of a larger register") {
    const DensityMatrix rho = random_qubit_state(3, gen);
    const double p = 0.2;
    const DensityMatrix out = apply_channel(rho, mnqc::depolarizing_channel(p, 1), {2});
    const Matrix reduced = oracle::trace_out(rho.data(), 3, {2});
    const Matrix expected =
        (1.0 - p) * rho.data() + p * oracle::kron(reduced, Matrix::Identity(2, 2) / 2.0);
    REQUIRE(max_abs_diff(out.data(), expected) < 1e-13);
  }

  SECTION("every pure state sees the same fidelity") {
    // For depolarizing noise the state fidelity is 1 - p + p/d for *every*
    // pure input, so a handful of random states pins the average gate
    // fidelity with zero sampling variance.
    const double p = 0.37;
    const QuantumChannel ch = mnqc::depolarizing_channel(p, 1);
    for (int k = 0; k < 20; ++k) {
      const Vector psi = oracle::random_state_vector(2, gen);
      const DensityMatrix pure = DensityMatrix::pure(HilbertLayout::qubits(1), psi);
      const double f = mnqc::state_fidelity(apply_channel(pure, ch, {0}), psi);
      REQUIRE_THAT(f, WithinAbs(1.0 - p / 2.0, 1e-12));
    }
    const double f_pro = mnqc::process_fidelity(ch, Matrix::Identity(2, 2));
    REQUIRE_THAT(mnqc::average_gate_fidelity(f_pro, 2), WithinAbs(1.0 - p / 2.0, 1e-12));
  }

  SECTION("domain errors") {
    REQUIRE_THROWS(mnqc::depolarizing_channel(-0.1, 1));
    REQUIRE_THROWS(mnqc::depolarizing_channel(1.1, 1));
  }
}

TEST_CASE("relaxation and dephasing channel") {
  const double t1 = 1e-3;
  const double t2 = 8e-4;

  SECTION("zero duration is the identity") {
    std::mt19937_64 gen(707);
    const DensityMatrix rho = random_qubit_state(1, gen);
    const DensityMatrix out = apply_channel(rho, mnqc::relaxation_dephasing_channel(0.0, t1, t2),
                                            {0});
    REQUIRE(max_abs_diff(out.data(), rho.data()) < 1e-14);
  }

  SECTION("population and coherence decay rates") {
    Matrix m(2, 2);
    m << Complex(0.3, 0.0), Complex(0.2, -0.1), Complex(0.2, 0.1), Complex(0.7, 0.0);
    const DensityMatrix rho(HilbertLayout::qubits(1), m);
    const double t = 2e-4;
    const DensityMatrix out = apply_channel(rho, mnqc::relaxation_dephasing_channel(t, t1, t2),
                                            {0});
    const double e1 = std::exp(-t / t1);
    const double e2 = std::exp(-t / t2);
    REQUIRE_THAT(out.data()(1, 1).real(), WithinAbs(0.7 * e1, 1e-12));
    REQUIRE_THAT(out.data()(0, 0).real(), WithinAbs(1.0 - 0.7 * e1, 1e-12));
    REQUIRE_THAT(std::abs(out.data()(0, 1) - Complex(0.2, -0.1) * e2), WithinAbs(0.0, 1e-12));
  }

  SECTION("composition over durations is a semigroup") {
    const QuantumChannel a = mnqc::relaxation_dephasing_channel(1e-4, t1, t2);
    const QuantumChannel b = mnqc::relaxation_dephasing_channel(3e-4, t1, t2);
    const QuantumChannel sum = mnqc::relaxation_dephasing_channel(4e-4, t1, t2);
    REQUIRE(max_abs_diff(mnqc::choi_state(mnqc::compose(b, a)), mnqc::choi_state(sum)) < 1e-10);
  }

  SECTION("trace preserving and valid output") {
    std::mt19937_64 gen(708);
    const QuantumChannel ch = mnqc::relaxation_dephasing_channel(5e-4, t1, t2);
    REQUIRE(ch.is_trace_preserving());
    const DensityMatrix out = apply_channel(random_qubit_state(1, gen), ch, {0});
    out.validate();
  }

  SECTION("domain errors") {
    REQUIRE_THROWS(mnqc::relaxation_dephasing_channel(1e-4, 1e-3, 2.5e-3));  // T2 > 2 T1
    REQUIRE_THROWS(mnqc::relaxation_dephasing_channel(-1e-4, t1, t2));
  }

  SECTION("fidelity lifetime") {
    REQUIRE_THAT(mnqc::fidelity_lifetime(1e-3, 1e-3), WithinAbs(5e-4, 1e-18));
    REQUIRE_THAT(mnqc::fidelity_lifetime(2e-3, 1e-3), WithinAbs(2e-3 / 3.0, 1e-18));
  }
}

TEST_CASE("channel composition order") {
  // compose(second, first) must apply `first` first.
  const HilbertLayout one_qubit = HilbertLayout::qubits(1);
  const QuantumChannel flip = mnqc::channel_from_unitary(mnqc::gates::x(), one_qubit);
  Matrix keep0 = Matrix::Zero(2, 2);
  keep0(0, 0) = 1.0;
  const QuantumChannel project0 = mnqc::make_channel(one_qubit, {keep0});

  const DensityMatrix zero = DensityMatrix::basis_state(one_qubit, {0});
  const DensityMatrix a = apply_channel(zero, mnqc::compose(project0, flip), {0});
  REQUIRE_THAT(a.trace_real(), WithinAbs(0.0, 1e-14));  // flip to |1>, then project on |0>
  const DensityMatrix b = apply_channel(zero, mnqc::compose(flip, project0), {0});
  REQUIRE_THAT(b.data()(1, 1).real(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("Choi representations") {
  std::mt19937_64 gen(808);

  SECTION("identity channel gives the maximally entangled state") {
    const QuantumChannel id = mnqc::channel_from_unitary(Matrix::Identity(2, 2),
                                                         HilbertLayout::qubits(1));
    const Vector omega = mnqc::maximally_entangled_vector(2);
    REQUIRE(max_abs_diff(mnqc::choi_state(id), omega * omega.adjoint()) < 1e-14);
  }

  SECTION("Kraus recovery round-trips a random mixed-unitary channel") {
    std::vector<Matrix> kraus;
    kraus.push_back(std::sqrt(0.5) * oracle::random_unitary(4, gen));
    kraus.push_back(std::sqrt(0.3) * oracle::random_unitary(4, gen));
    kraus.push_back(std::sqrt(0.2) * oracle::random_unitary(4, gen));
    const QuantumChannel ch = mnqc::make_channel(HilbertLayout::qubits(2), kraus);
    REQUIRE(ch.is_trace_preserving());

    const Matrix choi = mnqc::choi_state(ch);
    const std::vector<Matrix> recovered = mnqc::kraus_from_choi(choi);
    const QuantumChannel back = mnqc::make_channel(HilbertLayout::qubits(2), recovered);
    REQUIRE(back.is_trace_preserving());
    REQUIRE(max_abs_diff(mnqc::choi_state(back), choi) < 1e-10);
  }

  SECTION("process fidelity against an ideal unitary") {
    const HilbertLayout two = HilbertLayout::qubits(2);
    const QuantumChannel ideal_cx = mnqc::channel_from_unitary(mnqc::gates::cx(), two);
    REQUIRE_THAT(mnqc::process_fidelity(ideal_cx, mnqc::gates::cx()), WithinAbs(1.0, 1e-13));

    const double p = 0.05;
    const QuantumChannel noisy = mnqc::compose(mnqc::depolarizing_channel(p, 2), ideal_cx);
    REQUIRE_THAT(mnqc::process_fidelity(noisy, mnqc::gates::cx()),
                 WithinAbs(1.0 - 15.0 * p / 16.0, 1e-12));
    REQUIRE_THAT(mnqc::process_fidelity_choi(mnqc::choi_state(noisy), mnqc::gates::cx()),
                 WithinAbs(1.0 - 15.0 * p / 16.0, 1e-12));
  }

  SECTION("average gate fidelity conversion") {
    REQUIRE_THAT(mnqc::average_gate_fidelity(1.0, 4), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(mnqc::average_gate_fidelity(0.8, 4), WithinAbs((4.0 * 0.8 + 1.0) / 5.0, 1e-15));
  }

  SECTION("trace-nonincreasing classification") {
    Matrix keep0 = Matrix::Zero(2, 2);
    keep0(0, 0) = 1.0;
    const QuantumChannel proj = mnqc::make_channel(HilbertLayout::qubits(1), {keep0});
    REQUIRE_FALSE(proj.is_trace_preserving());
    REQUIRE(proj.is_trace_nonincreasing());
  }
}

TEST_CASE("physicality is preserved under random circuits") {
  std::mt19937_64 gen(909);
  for (int trial = 0; trial < 50; ++trial) {
    DensityMatrix rho = random_qubit_state(2, gen);
    for (int step = 0; step < 4; ++step) {
      rho = apply_unitary(rho, oracle::random_unitary(2, gen), {static_cast<int>(gen() % 2)});
      rho = apply_channel(rho, mnqc::depolarizing_channel(0.02, 1),
                          {static_cast<int>(gen() % 2)});
      rho = apply_channel(rho, mnqc::relaxation_dephasing_channel(1e-5, 1e-3, 1e-3),
                          {static_cast<int>(gen() % 2)});
    }
    rho.validate();
    REQUIRE(rho.purity() <= 1.0 + 1e-12);
    REQUIRE_THAT(rho.trace_real(), WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("thermal states") {
  SECTION("zero occupation is the vacuum") {
    const DensityMatrix vac = mnqc::thermal_state(0.0, 5);
    REQUIRE_THAT(vac.data()(0, 0).real(), WithinAbs(1.0, 1e-14));
  }

  SECTION("geometric ladder of occupations") {
    const DensityMatrix th = mnqc::thermal_state(1.0, 5);
    REQUIRE_THAT(th.trace_real(), WithinAbs(1.0, 1e-14));
    for (int n = 0; n + 1 < 5; ++n) {
      const double ratio = th.data()(n + 1, n + 1).real() / th.data()(n, n).real();
      REQUIRE_THAT(ratio, WithinAbs(0.5, 1e-12));  // n_bar/(n_bar+1)
    }
  }

  SECTION("tail weight formula") {
    REQUIRE_THAT(mnqc::thermal_tail_weight(1.0, 11), WithinAbs(std::pow(0.5, 11), 1e-16));
    REQUIRE(mnqc::thermal_tail_weight(1.0, 11) < 1e-3);
    REQUIRE_THAT(mnqc::thermal_tail_weight(0.3, 4), WithinAbs(std::pow(0.3 / 1.3, 4), 1e-15));
  }

  SECTION("annihilation operator") {
    const Matrix a = mnqc::annihilation_operator(4);
    for (int n = 1; n < 4; ++n) REQUIRE_THAT(a(n - 1, n).real(), WithinAbs(std::sqrt(n), 1e-14));
    REQUIRE_THAT(a.cwiseAbs().sum(), WithinAbs(std::sqrt(1.0) + std::sqrt(2.0) + std::sqrt(3.0),
                                               1e-13));
  }
}

TEST_CASE("beamsplitter unitary") {
  const int d_f = 4;

  SECTION("full transmission is the identity") {
    REQUIRE(max_abs_diff(mnqc::beamsplitter_unitary(1.0, d_f),
                         Matrix::Identity(d_f * d_f, d_f * d_f)) < 1e-12);
  }

  SECTION("exactly unitary and photon-number conserving") {
    const Matrix u = mnqc::beamsplitter_unitary(0.37, d_f);
    REQUIRE(max_abs_diff(u.adjoint() * u, Matrix::Identity(d_f * d_f, d_f * d_f)) < 1e-12);
    const Matrix n1 = mnqc::annihilation_operator(d_f).adjoint() * mnqc::annihilation_operator(d_f);
    const Matrix total = oracle::kron(n1, Matrix::Identity(d_f, d_f)) +
                         oracle::kron(Matrix::Identity(d_f, d_f), n1);
    REQUIRE(max_abs_diff(u.adjoint() * total * u, total) < 1e-11);
  }

  SECTION("single-photon splitting follows the stated convention") {
    const double T = 0.843;
    const Matrix u = mnqc::beamsplitter_unitary(T, d_f);
    const long in10 = 1 * d_f + 0;
    const long in01 = 1;
    REQUIRE_THAT(u(in10, in10).real(), WithinAbs(std::sqrt(T), 1e-12));
    REQUIRE_THAT(u(in01, in10).real(), WithinAbs(-std::sqrt(1.0 - T), 1e-12));
    REQUIRE_THAT(std::norm(u(in10, in10)), WithinAbs(T, 1e-12));
    REQUIRE_THAT(std::norm(u(in01, in10)), WithinAbs(1.0 - T, 1e-12));
  }

  SECTION("two-photon interference null at a balanced splitter") {
    const Matrix u = mnqc::beamsplitter_unitary(0.5, d_f);
    const long in11 = 1 * d_f + 1;
    REQUIRE_THAT(std::abs(u(in11, in11)), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("ladder channels") {
  std::mt19937_64 gen(1010);

  SECTION("pure loss on a single photon") {
    const double eta = 0.6;
    const mnqc::LadderChannel loss = mnqc::pure_loss_channel(eta, 3);
    const DensityMatrix one = DensityMatrix::basis_state(HilbertLayout({3}), {1});
    const DensityMatrix out = mnqc::apply_ladder_channel(one, loss);
    REQUIRE_THAT(out.data()(1, 1).real(), WithinAbs(eta, 1e-13));
    REQUIRE_THAT(out.data()(0, 0).real(), WithinAbs(1.0 - eta, 1e-13));
  }

  SECTION("dense Kraus form agrees with the fast path") {
    const int d_f = 6;
    const mnqc::LadderChannel loss = mnqc::pure_loss_channel(0.71, d_f);
    const DensityMatrix joint = tensor_product(
        DensityMatrix(HilbertLayout({3}), oracle::random_density(3, gen)),
        DensityMatrix(HilbertLayout({d_f}), oracle::random_density(d_f, gen)));
    const DensityMatrix fast = mnqc::apply_ladder_channel(joint, loss);
    const QuantumChannel dense = mnqc::to_quantum_channel(loss);
    const DensityMatrix generic = apply_channel(joint, dense, {1});
    REQUIRE(max_abs_diff(fast.data(), generic.data()) < 1e-12);
  }

}

TEST_CASE("loss and amplification dilations") {
  std::mt19937_64 gen(1111);
  const int d_f = 8;

  // System state supported on the first three Fock levels with headroom.
  Matrix small = Matrix::Zero(d_f, d_f);
  small.topLeftCorner(3, 3) = oracle::random_density(3, gen);
  const DensityMatrix sys(HilbertLayout({d_f}), small);

  SECTION("pure loss equals a beamsplitter to a vacuum environment") {
    const double eta = 0.7;
    const DensityMatrix env = DensityMatrix::basis_state(HilbertLayout({d_f}), {0});
    DensityMatrix joint = tensor_product(sys, env);
    const Matrix u = mnqc::beamsplitter_unitary(eta, d_f);
    joint = apply_unitary(joint, u, {0, 1}, -1.0);
    const DensityMatrix reduced = partial_trace(joint, {0});
    const DensityMatrix direct = mnqc::apply_ladder_channel(sys, mnqc::pure_loss_channel(eta, d_f));
    REQUIRE(max_abs_diff(reduced.data(), direct.data()) < 1e-10);
  }

  SECTION("thermal loss equals a beamsplitter to a thermal environment") {
    const double eta = 0.75;
    const double n_bar = 0.15;
    const DensityMatrix env = mnqc::thermal_state(n_bar, d_f);
    DensityMatrix joint = tensor_product(sys, env);
    const Matrix u = mnqc::beamsplitter_unitary(eta, d_f);
    joint = apply_unitary(joint, u, {0, 1}, -1.0);
    const DensityMatrix reduced = partial_trace(joint, {0});

    const auto [first, second] = mnqc::thermal_loss_channels(eta, n_bar, d_f);
    DensityMatrix direct = mnqc::apply_ladder_channel(sys, first);
    direct = mnqc::apply_ladder_channel(direct, second);

    // Agreement is limited by the thermal tail outside the truncation.
    REQUIRE(max_abs_diff(reduced.data().topLeftCorner(5, 5), direct.data().topLeftCorner(5, 5)) <
            1e-6);
    REQUIRE_THAT(direct.trace_real(), WithinAbs(1.0, 1e-6));
  }

  SECTION("amplifier adds the quantum-limited photon number") {
    const double gain = 1.2;
    const int big = 24;
    const DensityMatrix vac = DensityMatrix::basis_state(HilbertLayout({big}), {0});
    const DensityMatrix out = mnqc::apply_ladder_channel(vac, mnqc::amplifier_channel(gain, big));
    REQUIRE_THAT(out.trace_real(), WithinAbs(1.0, 1e-9));
    const Matrix n_op =
        mnqc::annihilation_operator(big).adjoint() * mnqc::annihilation_operator(big);
    const double mean_n = expectation(out, n_op, {0}).real();
    REQUIRE_THAT(mean_n, WithinAbs(gain - 1.0, 1e-6));
  }

  SECTION("decomposition gain matches 1 + (1 - eta) n_bar") {
    const double eta = 0.6;
    const double n_bar = 0.4;
    const auto [first, second] = mnqc::thermal_loss_channels(eta, n_bar, d_f);
    // First stage is a loss (lowering), second an amplifier (raising).
    REQUIRE_FALSE(first.raises);
    REQUIRE(second.raises);
  }
}

TEST_CASE("deterministic random number generator") {
  mnqc::Rng a(42);
  mnqc::Rng b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

  mnqc::Rng c(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const int k = c.uniform_int(7);
    REQUIRE(k >= 0);
    REQUIRE(k < 7);
    REQUIRE(std::isfinite(c.normal()));
  }

  // Split streams are independent of the parent state and of each other.
  const mnqc::Rng root(7);
  mnqc::Rng s0 = root.split(0);
  mnqc::Rng s1 = root.split(1);
  REQUIRE(s0.next_u64() != s1.next_u64());
  mnqc::Rng s0_again = root.split(0);
  REQUIRE(s0_again.next_u64() == root.split(0).next_u64());

  mnqc::Rng u_rng(11);
  const Matrix u = mnqc::random_unitary(8, u_rng);
  REQUIRE(max_abs_diff(u.adjoint() * u, Matrix::Identity(8, 8)) < 1e-10);
}
