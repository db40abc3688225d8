#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "mnqc/distillation.hpp"
#include "mnqc/gates.hpp"
#include "mnqc/noise.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using mnqc::BellLabel;
using mnqc::DensityMatrix;
using mnqc::HilbertLayout;
using mnqc::NoiseParams;
using namespace mnqc::distill;

namespace {

NoiseParams noiseless() {
  NoiseParams n;
  n.depolarizing_prob = 0.0;
  n.purification_step_time = 0.0;
  return n;
}

double max_abs_diff(const mnqc::Matrix& a, const mnqc::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("analytic purification fidelity map") {
  SECTION("fixed points are exact in floating point") {
    REQUIRE(bbpssw_update(1.0) == 1.0);
    REQUIRE(bbpssw_update(0.5) == 0.5);
    REQUIRE(bbpssw_update(0.25) == 0.25);
  }

  SECTION("strict gain on the useful interval") {
    for (int k = 1; k < 100; ++k) {
      const double f = 0.5 + 0.005 * k;
      if (f >= 1.0) break;
      REQUIRE(bbpssw_update(f) > f);
    }
  }

  SECTION("monotone map") {
    double previous = 0.5;
    for (int k = 1; k <= 100; ++k) {
      const double f = 0.5 + 0.005 * k;
      const double mapped = bbpssw_update(std::min(f, 1.0));
      REQUIRE(mapped > previous);
      previous = mapped;
    }
  }

  SECTION("reference value") {
    REQUIRE_THAT(bbpssw_update(0.8), WithinAbs(0.838150, 1e-5));
    // Closed form: (f^2 + g^2/9) / (f^2 + 2fg/3 + 5g^2/9) with g = 1 - f.
    const double f = 0.8, g = 0.2;
    const double expected = (f * f + g * g / 9.0) / (f * f + 2.0 * f * g / 3.0 + 5.0 * g * g / 9.0);
    REQUIRE(bbpssw_update(0.8) == expected);
  }
}

TEST_CASE("purification round against the dense 16x16 oracle") {
  std::mt19937_64 gen(424242);
  const std::vector<double> p_list = {0.0, 1e-4, 1e-3, 1e-2};

  for (int trial = 0; trial < 200; ++trial) {
    const mnqc::Matrix kept = oracle::random_bell_diagonal(gen);
    const mnqc::Matrix sac = oracle::random_bell_diagonal(gen);
    const double p = p_list[trial % p_list.size()];

    NoiseParams noise = noiseless();
    noise.depolarizing_prob = p;
    const RoundOutput lib = dejmps_round(DensityMatrix(HilbertLayout::qubits(2), kept),
                                         DensityMatrix(HilbertLayout::qubits(2), sac), noise,
                                         /*ideal_memory=*/true);
    const oracle::PurifyOracleResult ref = oracle::purify_round_oracle(kept, sac, p);

    REQUIRE(max_abs_diff(lib.state.data(), ref.state) < 1e-10);
    REQUIRE_THAT(lib.success_prob, WithinAbs(ref.success, 1e-10));
  }
}

TEST_CASE("purification round special cases") {
  SECTION("perfect input pairs pass through unchanged") {
    const DensityMatrix psi = mnqc::bell_state(BellLabel::kPsiPlus);
    const RoundOutput out = dejmps_round(psi, psi, noiseless(), true);
    REQUIRE_THAT(out.success_prob, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(mnqc::bell_fidelity(out.state, BellLabel::kPsiPlus), WithinAbs(1.0, 1e-12));
  }

  SECTION("Werner inputs follow the analytic update") {
    const DensityMatrix w = mnqc::werner_state(0.8, BellLabel::kPsiPlus);
    const RoundOutput out = dejmps_round(w, w, noiseless(), true);
    const double f_out = mnqc::bell_fidelity(out.state, BellLabel::kPsiPlus);
    REQUIRE_THAT(f_out, WithinAbs(bbpssw_update(0.8), 1e-12));
    REQUIRE(f_out > 0.8);
    const double f = 0.8, x = 0.2 / 3.0;
    REQUIRE_THAT(out.success_prob, WithinAbs(f * f + 2.0 * f * x + 5.0 * x * x, 1e-12));
  }

  SECTION("gate noise reduces the gain") {
    const DensityMatrix w = mnqc::werner_state(0.8, BellLabel::kPsiPlus);
    NoiseParams noisy = noiseless();
    noisy.depolarizing_prob = 1e-2;
    const RoundOutput out = dejmps_round(w, w, noisy, true);
    const double f_ideal = bbpssw_update(0.8);
    const double f_noisy = mnqc::bell_fidelity(out.state, BellLabel::kPsiPlus);
    REQUIRE(f_noisy < f_ideal);
    REQUIRE(f_noisy > 0.8);  // still a net gain at this noise level
  }

  SECTION("input shape is checked") {
    const DensityMatrix one_qubit = DensityMatrix::basis_state(HilbertLayout::qubits(1), {0});
    const DensityMatrix pair = mnqc::bell_state(BellLabel::kPsiPlus);
    REQUIRE_THROWS(dejmps_round(one_qubit, pair, noiseless(), true));
  }
}

TEST_CASE("nested distillation recurrence") {
  const DensityMatrix raw = mnqc::werner_state(0.8, BellLabel::kPsiPlus);

  SECTION("zero rounds returns the raw pair") {
    DistillationConfig config;
    config.rounds = 0;
    config.raw_pair_time_s = 1e-6;
    config.noise = noiseless();
    const DistillationResult r = nested_distillation(raw, config);
    REQUIRE(max_abs_diff(r.state.data(), raw.data()) < 1e-14);
    REQUIRE_THAT(r.total_time_s, WithinAbs(1e-6, 1e-18));
    REQUIRE_THAT(r.success_prob, WithinAbs(1.0, 1e-15));
    REQUIRE(r.per_round_p.empty());
    REQUIRE_THAT(r.fidelity, WithinAbs(0.8, 1e-12));
  }

  SECTION("timing closed form") {
    const double tau = 1e-6;
    const double t_p = 1e-6;
    REQUIRE_THAT(distillation_time(3, tau, t_p), WithinAbs(1.1e-5, 1e-18));
    REQUIRE_THAT(distillation_time(0, tau, t_p), WithinAbs(tau, 1e-18));

    NoiseParams noise = noiseless();
    noise.purification_step_time = t_p;
    for (int rounds = 0; rounds <= 6; ++rounds) {
      DistillationConfig config;
      config.rounds = rounds;
      config.raw_pair_time_s = tau;
      config.noise = noise;
      config.ideal_memory = true;
      const DistillationResult r = nested_distillation(raw, config);
      // t_n = 2^n tau + n t_p, accumulated as 2^{n-1} tau + t_{n-1} + t_p.
      REQUIRE_THAT(r.total_time_s, WithinAbs(distillation_time(rounds, tau, t_p), 1e-18));
    }
  }

  SECTION("single-shot success is the published product") {
    DistillationConfig config;
    config.rounds = 4;
    config.raw_pair_time_s = 1e-6;
    config.noise = noiseless();
    config.ideal_memory = true;
    const DistillationResult r = nested_distillation(raw, config);
    REQUIRE(r.per_round_p.size() == 4);
    double expected = 1.0;
    for (std::size_t j = 0; j < r.per_round_p.size(); ++j)
      expected *= std::pow(r.per_round_p[j], std::ldexp(1.0, static_cast<int>(j)));
    REQUIRE_THAT(r.success_prob, WithinAbs(expected, 1e-15));
    for (double p : r.per_round_p) {
      REQUIRE(p > 0.0);
      REQUIRE(p <= 1.0);
    }
  }

  SECTION("published product reference") {
    REQUIRE_THAT(single_shot_success({0.95, 0.95, 0.95}), WithinAbs(std::pow(0.95, 7), 1e-15));
    REQUIRE_THAT(single_shot_success({0.95, 0.95, 0.95}), WithinAbs(0.698337, 1e-6));
    REQUIRE_THAT(single_shot_success({}), WithinAbs(1.0, 1e-15));
  }

  SECTION("ideal memory fidelity is nondecreasing through five rounds") {
    NoiseParams noise;  // default gate noise
    double previous = 0.8;
    for (int rounds = 1; rounds <= 5; ++rounds) {
      DistillationConfig config;
      config.rounds = rounds;
      config.raw_pair_time_s = 1e-6;
      config.noise = noise;
      config.ideal_memory = true;
      const DistillationResult r = nested_distillation(raw, config);
      REQUIRE(r.fidelity >= previous - 1e-12);
      previous = r.fidelity;
    }
    REQUIRE(previous > 0.95);
  }

  SECTION("finite memory shows a fidelity upturn within ten rounds") {
    const DensityMatrix raw9 = mnqc::werner_state(0.9, BellLabel::kPsiPlus);
    NoiseParams noise;
    noise.t1 = 1e-3;
    noise.t2 = 1e-3;
    std::vector<double> infidelity;
    for (int rounds = 1; rounds <= 10; ++rounds) {
      DistillationConfig config;
      config.rounds = rounds;
      config.raw_pair_time_s = 1e-6;
      config.noise = noise;
      config.ideal_memory = false;
      infidelity.push_back(1.0 - nested_distillation(raw9, config).fidelity);
    }
    // The waiting time doubles every round, so decoherence eventually beats
    // the purification gain and the infidelity turns back up.
    int best = 0;
    for (int n = 1; n < 10; ++n)
      if (infidelity[n] < infidelity[best]) best = n;
    REQUIRE(best + 1 <= 10);
    REQUIRE(best < 9);  // the curve rises again after the optimum
    REQUIRE(infidelity[9] > infidelity[best]);
    REQUIRE(infidelity[best] < 0.1);  // distillation helped before the upturn
  }

  SECTION("config validation") {
    DistillationConfig config;
    config.rounds = -1;
    REQUIRE_THROWS(config.validate());
    config.rounds = 0;
    config.raw_pair_time_s = 0.0;
    REQUIRE_THROWS(config.validate());
    config.raw_pair_time_s = 1e-6;
    config.noise.t2 = 3.0 * config.noise.t1;
    REQUIRE_THROWS(config.validate());
  }
}

TEST_CASE("one-round fidelity gain study") {
  const std::vector<double> f0_grid = {0.6, 0.7, 0.8, 0.9, 1.0};
  const std::vector<double> p_list = {0.0, 1e-3, 1e-2};
  const std::vector<FidelityGainPoint> table = fidelity_gain_study(f0_grid, p_list, NoiseParams{});
  REQUIRE(table.size() == f0_grid.size() * p_list.size());

  auto gain = [&](double f0, double p) {
    for (const FidelityGainPoint& pt : table)
      if (pt.f0 == f0 && pt.p_cnot == p) return pt.delta_f;
    FAIL("missing grid point");
    return 0.0;
  };

  SECTION("ideal rows follow the analytic update") {
    for (double f0 : f0_grid)
      REQUIRE_THAT(gain(f0, 0.0), WithinAbs(bbpssw_update(f0) - f0, 1e-12));
    REQUIRE_THAT(gain(1.0, 0.0), WithinAbs(0.0, 1e-12));
  }

  SECTION("gate noise orders the curves pointwise") {
    for (double f0 : f0_grid) {
      REQUIRE(gain(f0, 0.0) >= gain(f0, 1e-3) - 1e-12);
      REQUIRE(gain(f0, 1e-3) >= gain(f0, 1e-2) - 1e-12);
    }
  }

  SECTION("agrees with a direct round") {
    const DensityMatrix w = mnqc::werner_state(0.8, BellLabel::kPsiPlus);
    NoiseParams noise;
    noise.depolarizing_prob = 1e-3;
    const RoundOutput direct = dejmps_round(w, w, noise, true);
    REQUIRE_THAT(gain(0.8, 1e-3),
                 WithinAbs(mnqc::bell_fidelity(direct.state, BellLabel::kPsiPlus) - 0.8, 1e-12));
  }
}
