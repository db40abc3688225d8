#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "mnqc/roofline.hpp"

using Catch::Matchers::WithinAbs;
using namespace mnqc::roofline;

namespace {

// Published two-node 10-qubit benchmark statistics.  n_2q includes the
// internode gates (the local-only column plus the comm column).
CircuitStats ghz_stats() { return {13, 3, 9, 1, 0.162}; }
CircuitStats bv_stats() { return {26, 57, 31, 7, 0.458}; }
CircuitStats qft_stats() { return {633, 323, 603, 164, 0.242}; }
CircuitStats adder_stats() { return {219, 101, 232, 55, 0.258}; }

RooflineMachine reference_machine() {
  RooflineMachine m;
  m.n_q = 10;
  m.t_local = 100e-9;
  m.t_link = 1.041e-6;
  m.n_links = 1;
  return m;
}

}  // namespace

TEST_CASE("computation-to-communication ratio in slot units") {
  SECTION("reference circuits") {
    REQUIRE_THAT(compute_ccr(ghz_stats()), WithinAbs(9.5, 0.01));
    REQUIRE_THAT(compute_ccr(bv_stats()), WithinAbs(7.5, 0.01));
    REQUIRE_THAT(compute_ccr(qft_stats()), WithinAbs(3.6616, 0.01));
    REQUIRE_THAT(compute_ccr(adder_stats()), WithinAbs(4.1364, 0.01));
  }

  SECTION("exact slot arithmetic") {
    // Every two-qubit gate occupies two slots, one-qubit gates one slot;
    // internode gates supply two communication slots each.
    REQUIRE_THAT(compute_ccr(ghz_stats()), WithinAbs(19.0 / 2.0, 1e-12));
    REQUIRE_THAT(compute_ccr(bv_stats()), WithinAbs(105.0 / 14.0, 1e-12));
    REQUIRE_THAT(compute_ccr(qft_stats()), WithinAbs(1201.0 / 328.0, 1e-12));
    REQUIRE_THAT(compute_ccr(adder_stats()), WithinAbs(455.0 / 110.0, 1e-12));

    CircuitStats synthetic{1, 10, 10, 5, 0.5};
    REQUIRE_THAT(compute_ccr(synthetic), WithinAbs(2.0, 1e-12));
  }

  SECTION("a circuit without internode gates is unbounded") {
    CircuitStats local_only{5, 4, 3, 0, 0.5};
    REQUIRE(std::isinf(compute_ccr(local_only)));
    REQUIRE(compute_ccr(local_only) == kInfiniteCcr);
  }

  SECTION("input validation") {
    CircuitStats negative{5, -1, 3, 1, 0.5};
    REQUIRE_THROWS_AS(compute_ccr(negative), std::invalid_argument);
    CircuitStats comm_exceeds{5, 1, 3, 4, 0.5};
    REQUIRE_THROWS_AS(compute_ccr(comm_exceeds), std::invalid_argument);
  }
}

TEST_CASE("machine balance point") {
  SECTION("reference machine") {
    REQUIRE_THAT(compute_mccr(reference_machine()), WithinAbs(10.41, 1e-9));
    REQUIRE_THAT(compute_mccr(reference_machine()), WithinAbs(10.4, 0.05));
  }

  SECTION("equal link and local times balance at one") {
    RooflineMachine m = reference_machine();
    m.t_link = m.t_local;
    REQUIRE_THAT(compute_mccr(m), WithinAbs(1.0, 1e-15));
  }

  SECTION("machine validation") {
    RooflineMachine faster_link = reference_machine();
    faster_link.t_link = 50e-9;  // below t_local
    REQUIRE_THROWS_AS(compute_mccr(faster_link), std::invalid_argument);
    RooflineMachine zero = reference_machine();
    zero.t_local = 0.0;
    REQUIRE_THROWS_AS(compute_mccr(zero), std::invalid_argument);
  }
}

TEST_CASE("roofline classification and delivered rate") {
  const RooflineMachine machine = reference_machine();

  SECTION("all reference circuits sit under the communication roof") {
    for (const CircuitStats& stats : {ghz_stats(), bv_stats(), qft_stats(), adder_stats()}) {
      const BoundResult r = classify_bound(stats, machine);
      REQUIRE(r.kind == BoundKind::kCommunication);
      REQUIRE_THAT(r.mccr, WithinAbs(10.41, 1e-9));
      REQUIRE(r.delivered_rate <= machine.n_q * stats.gate_density + 1e-12);
    }
  }

  SECTION("delivered rates") {
    REQUIRE_THAT(classify_bound(qft_stats(), machine).delivered_rate, WithinAbs(2.42, 0.005));
    REQUIRE_THAT(classify_bound(adder_stats(), machine).delivered_rate, WithinAbs(2.58, 0.005));
    REQUIRE_THAT(classify_bound(bv_stats(), machine).delivered_rate, WithinAbs(4.58, 0.005));
    REQUIRE_THAT(classify_bound(ghz_stats(), machine).delivered_rate, WithinAbs(1.62, 0.005));
  }

  SECTION("computation-bound circuit") {
    CircuitStats heavy = bv_stats();
    heavy.n_comm = 1;
    heavy.n_2q = 25;  // 24 local two-qubit gates + 1 internode
    // CCR = (57 + 2*24)/2 = 52.5 >> MCCR
    const BoundResult r = classify_bound(heavy, machine);
    REQUIRE(r.kind == BoundKind::kComputation);
    REQUIRE(r.ccr > r.mccr);
  }

  SECTION("balanced at equality") {
    RooflineMachine m = reference_machine();
    CircuitStats stats{10, 10, 10, 5, 0.5};  // CCR = 2
    m.t_link = 2.0 * m.t_local;              // MCCR = 2
    const BoundResult r = classify_bound(stats, m);
    REQUIRE(r.kind == BoundKind::kBalanced);
  }

  SECTION("delivered rate does not increase with link latency") {
    double previous = 1e300;
    for (double t_link : {0.2e-6, 1.041e-6, 5e-6, 25e-6}) {
      RooflineMachine m = reference_machine();
      m.t_link = t_link;
      const double rate = classify_bound(qft_stats(), m).delivered_rate;
      REQUIRE(rate <= previous + 1e-12);
      previous = rate;
    }
  }
}

TEST_CASE("distillation shifts the balance point") {
  const RooflineMachine machine = reference_machine();

  SECTION("published multiplier mode") {
    const RooflineMachine one = distillation_shift(machine, 1, ShiftMode::kPaper);
    REQUIRE_THAT(compute_mccr(one), WithinAbs(20.82, 0.05));
    const RooflineMachine two = distillation_shift(machine, 2, ShiftMode::kPaper);
    REQUIRE_THAT(compute_mccr(two), WithinAbs(31.23, 0.05));
    REQUIRE_THAT(one.t_link, WithinAbs(2.0 * machine.t_link, 1e-15));
    REQUIRE_THAT(two.t_link, WithinAbs(3.0 * machine.t_link, 1e-15));
  }

  SECTION("recurrence mode") {
    const double t_p = 1e-6;
    const RooflineMachine one = distillation_shift(machine, 1, ShiftMode::kRecurrence, t_p);
    REQUIRE_THAT(one.t_link, WithinAbs(2.0 * machine.t_link + t_p, 1e-15));
    const RooflineMachine three = distillation_shift(machine, 3, ShiftMode::kRecurrence, t_p);
    REQUIRE_THAT(three.t_link, WithinAbs(8.0 * machine.t_link + 3.0 * t_p, 1e-15));
  }

  SECTION("zero rounds is a no-op in both modes") {
    REQUIRE_THAT(distillation_shift(machine, 0, ShiftMode::kPaper).t_link,
                 WithinAbs(machine.t_link, 1e-18));
    REQUIRE_THAT(distillation_shift(machine, 0, ShiftMode::kRecurrence, 1e-6).t_link,
                 WithinAbs(machine.t_link, 1e-18));
  }

  SECTION("negative rounds throw") {
    REQUIRE_THROWS_AS(distillation_shift(machine, -1, ShiftMode::kPaper), std::invalid_argument);
  }

  SECTION("shifted machines stay valid inputs") {
    const RooflineMachine shifted = distillation_shift(machine, 4, ShiftMode::kRecurrence, 1e-6);
    const BoundResult r = classify_bound(qft_stats(), shifted);
    REQUIRE(r.kind == BoundKind::kCommunication);
    REQUIRE(r.mccr > compute_mccr(machine));
  }
}
