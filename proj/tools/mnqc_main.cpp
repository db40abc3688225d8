#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mnqc/benchmarks.hpp"
#include "mnqc/config.hpp"
#include "mnqc/distillation.hpp"
#include "mnqc/dqpe.hpp"
#include "mnqc/gap.hpp"
#include "mnqc/gates.hpp"
#include "mnqc/internode_gate.hpp"
#include "mnqc/m2o.hpp"
#include "mnqc/output.hpp"
#include "mnqc/qcpa.hpp"
#include "mnqc/quantum_volume.hpp"
#include "mnqc/roofline.hpp"
#include "mnqc/router.hpp"
#include "mnqc/simulator.hpp"
#include "mnqc/topology.hpp"

namespace {

using mnqc::DensityMatrix;
using mnqc::NoiseParams;
using mnqc::cfg::RunConfig;
using mnqc::out::CsvRow;
using mnqc::out::Manifest;

// Exit codes, one per failure class.
constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitDomain = 4;
constexpr int kExitIo = 5;

double fidelity_lifetime_s(const NoiseParams& noise) {
  return noise.t1 * noise.t2 / (noise.t1 + noise.t2);
}

std::string artifact_path(const RunConfig& config, const std::string& name) {
  return config.out_dir + "/" + name;
}

std::vector<double> pe_sweep_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.05 * i);
  return grid;
}

// Physical -> distillation -> internode gate, shared by most subcommands.
struct LinkStage {
  double pump_watts = 0.0;
  mnqc::m2o::HeraldedEpResult raw;
  mnqc::distill::DistillationResult distilled;
  double delivery_time_s = 0.0;
  mnqc::gate::InternodeGateResult gate;
};

LinkStage run_link_stage(const RunConfig& config) {
  const mnqc::m2o::ConverterPreset& preset = mnqc::m2o::preset(config.preset);
  LinkStage stage;
  stage.pump_watts = config.auto_power ? mnqc::m2o::pump_power_for_cooperativity(preset)
                                       : config.pump_watts;
  stage.raw = mnqc::m2o::simulate_heralded_cycle(preset, stage.pump_watts, config.pe);
  if (!(stage.raw.rate_hz > 0.0))
    throw std::domain_error("entanglement rate vanishes at this operating point");
  mnqc::distill::DistillationConfig distill_config;
  distill_config.rounds = config.rounds;
  distill_config.raw_pair_time_s = 1.0 / stage.raw.rate_hz;
  distill_config.noise = config.noise;
  stage.distilled = mnqc::distill::nested_distillation(stage.raw.state, distill_config);
  stage.delivery_time_s = stage.distilled.total_time_s / stage.distilled.success_prob;
  stage.gate = mnqc::gate::teleported_cx(stage.distilled.state, stage.delivery_time_s,
                                         config.noise);
  return stage;
}

void add_link_results(Manifest& manifest, const LinkStage& stage) {
  manifest.add_result("pump_watts", stage.pump_watts);
  manifest.add_result("raw_rate_hz", stage.raw.rate_hz);
  manifest.add_result("raw_fidelity", stage.raw.fidelity);
  manifest.add_result("distilled_fidelity", stage.distilled.fidelity);
  manifest.add_result("distillation_success_prob", stage.distilled.success_prob);
  manifest.add_result("delivery_time_s", stage.delivery_time_s);
  manifest.add_result("t_ll_s", stage.gate.gate_time_s);
  manifest.add_result("f_ll", stage.gate.process_fidelity);
  manifest.add_result("average_gate_fidelity", stage.gate.average_gate_fidelity);
}

void emit_m2o_sweep(const RunConfig& config, Manifest& manifest) {
  const mnqc::m2o::ConverterPreset& preset = mnqc::m2o::preset(config.preset);
  const double watts = config.auto_power ? mnqc::m2o::pump_power_for_cooperativity(preset)
                                         : config.pump_watts;
  const std::vector<mnqc::m2o::HeraldedEpResult> sweep =
      mnqc::m2o::sweep_excitation_prob(preset, watts, pe_sweep_grid());
  std::vector<CsvRow> rows;
  for (const auto& point : sweep) {
    rows.push_back({point.excitation_prob, point.pump_watts, point.params.cooperativity,
                    point.herald_prob, point.rate_hz, point.fidelity, point.infidelity,
                    static_cast<long long>(point.fock_dim)});
  }
  const std::string path = artifact_path(config, "m2o_sweep.csv");
  mnqc::out::write_csv(path,
                       {"pe", "pump_watts", "cooperativity", "herald_prob", "rate_hz", "fidelity",
                        "infidelity", "fock_dim"},
                       rows);
  manifest.add_output("m2o_sweep.csv", "heralded EP generation vs excitation probability");
  const mnqc::m2o::HeraldedEpResult operating =
      mnqc::m2o::simulate_heralded_cycle(preset, watts, config.pe);
  manifest.add_result("pump_watts", watts);
  manifest.add_result("rate_hz", operating.rate_hz);
  manifest.add_result("fidelity", operating.fidelity);
  manifest.add_result("infidelity", operating.infidelity);
}

void emit_distill(const RunConfig& config, Manifest& manifest) {
  const mnqc::m2o::ConverterPreset& preset = mnqc::m2o::preset(config.preset);
  const double watts = config.auto_power ? mnqc::m2o::pump_power_for_cooperativity(preset)
                                         : config.pump_watts;
  const mnqc::m2o::HeraldedEpResult raw =
      mnqc::m2o::simulate_heralded_cycle(preset, watts, config.pe);
  if (!(raw.rate_hz > 0.0))
    throw std::domain_error("entanglement rate vanishes at this operating point");
  std::vector<CsvRow> rows;
  for (int round = 0; round <= config.rounds; ++round) {
    mnqc::distill::DistillationConfig distill_config;
    distill_config.rounds = round;
    distill_config.raw_pair_time_s = 1.0 / raw.rate_hz;
    distill_config.noise = config.noise;
    const mnqc::distill::DistillationResult result =
        mnqc::distill::nested_distillation(raw.state, distill_config);
    rows.push_back({static_cast<long long>(round), result.fidelity, result.success_prob,
                    result.total_time_s, result.total_time_s / result.success_prob});
    if (round == config.rounds) {
      manifest.add_result("distilled_fidelity", result.fidelity);
      manifest.add_result("distillation_success_prob", result.success_prob);
      manifest.add_result("delivery_time_s", result.total_time_s / result.success_prob);
    }
  }
  mnqc::out::write_csv(
      artifact_path(config, "distill.csv"),
      {"rounds", "fidelity", "success_prob", "total_time_s", "delivery_time_s"}, rows);
  manifest.add_output("distill.csv", "nested distillation fidelity/time/success per round depth");
  manifest.add_result("raw_fidelity", raw.fidelity);
  manifest.add_result("raw_rate_hz", raw.rate_hz);
}

void emit_gate(const RunConfig& config, bool perfect_ep, Manifest& manifest) {
  mnqc::gate::InternodeGateResult result;
  if (perfect_ep) {
    NoiseParams ideal = config.noise;
    ideal.depolarizing_prob = 0.0;
    ideal.local_gate_time = 0.0;
    result = mnqc::gate::teleported_cx(mnqc::bell_state(mnqc::BellLabel::kPsiPlus), 0.0, ideal);
    manifest.add_result("perfect_ep", "true");
  } else {
    const LinkStage stage = run_link_stage(config);
    result = stage.gate;
    add_link_results(manifest, stage);
  }
  const double infidelity = 1.0 - result.process_fidelity;
  std::vector<CsvRow> rows;
  rows.push_back({result.gate_time_s, result.process_fidelity, result.average_gate_fidelity,
                  infidelity});
  mnqc::out::write_csv(artifact_path(config, "gate.csv"),
                       {"t_ll_s", "process_fidelity", "average_gate_fidelity", "infidelity"},
                       rows);
  manifest.add_output("gate.csv", "teleported internode CX latency and fidelity");
  manifest.add_result("process_fidelity", result.process_fidelity);
  manifest.add_result("gate_time_s", result.gate_time_s);
}

void emit_gap(const RunConfig& config, Manifest& manifest) {
  const mnqc::bench::GapAxes axes = mnqc::bench::log_spaced_axes(
      config.grid.link_time_min, config.grid.link_time_max, config.grid.link_time_points,
      config.grid.infidelity_min, config.grid.infidelity_max, config.grid.infidelity_points);
  for (const std::string& name : config.benchmarks) {
    const mnqc::bench::BenchmarkKind kind = mnqc::bench::benchmark_from_string(name);
    if (kind == mnqc::bench::BenchmarkKind::kQv) continue;  // scanned by the qv subcommand
    const mnqc::bench::GapGrid grid =
        mnqc::bench::gap_scan(kind, axes, config.noise, {}, config.grid.threshold);
    std::vector<CsvRow> rows;
    int successes = 0;
    for (std::size_t ti = 0; ti < grid.axes.link_time_s.size(); ++ti) {
      for (std::size_t ii = 0; ii < grid.axes.link_infidelity.size(); ++ii) {
        const bool ok = grid.success[ii][ti];
        successes += ok ? 1 : 0;
        rows.push_back({grid.axes.link_time_s[ti], grid.axes.link_infidelity[ii],
                        grid.scores[ii][ti], static_cast<long long>(ok ? 1 : 0)});
      }
    }
    const std::string file = "gap_" + name + ".csv";
    mnqc::out::write_csv(artifact_path(config, file),
                         {"link_time_s", "link_infidelity", "score", "success"}, rows);
    manifest.add_output(file, "GAP scan scores for " + name);
    manifest.add_result("success_points_" + name, static_cast<double>(successes));
    manifest.add_result("down_closed_" + name, grid.is_down_closed() ? 1.0 : 0.0);
  }

  const mnqc::m2o::ConverterPreset& preset = mnqc::m2o::preset(config.preset);
  const std::vector<mnqc::bench::FrontierPoint> frontier =
      mnqc::bench::link_frontier(preset, pe_sweep_grid(), {0, 1, 2, 3, 4}, config.noise);
  std::vector<CsvRow> frontier_rows;
  for (const auto& point : frontier) {
    frontier_rows.push_back({point.pe, static_cast<long long>(point.rounds), point.pump_watts,
                             point.raw_rate_hz, point.raw_fidelity, point.t_ll_s, point.f_ll});
  }
  mnqc::out::write_csv(
      artifact_path(config, "frontier.csv"),
      {"pe", "rounds", "pump_watts", "raw_rate_hz", "raw_fidelity", "t_ll_s", "f_ll"},
      frontier_rows);
  manifest.add_output("frontier.csv", "achievable link operating points at C = 1");

  const std::vector<mnqc::bench::BoundaryPoint> boundary = mnqc::bench::analytic_boundary(
      config.grid.threshold, 10, fidelity_lifetime_s(config.noise), config.grid.link_time_min,
      config.grid.link_time_max, 50);
  std::vector<CsvRow> boundary_rows;
  for (const auto& point : boundary)
    boundary_rows.push_back({point.link_time_s, point.link_infidelity});
  mnqc::out::write_csv(artifact_path(config, "boundary.csv"),
                       {"link_time_s", "link_infidelity"}, boundary_rows);
  manifest.add_output("boundary.csv", "analytic iso-fidelity budget boundary");
}

void emit_qv(const RunConfig& config, Manifest& manifest) {
  const NoiseParams& noise = config.noise;
  std::vector<CsvRow> rows;
  const auto append_points = [&rows](const std::string& device,
                                     const mnqc::bench::QvResult& result) {
    for (const auto& point : result.points) {
      rows.push_back({device, static_cast<long long>(point.width),
                      static_cast<long long>(point.trials), point.mean_heavy_prob,
                      point.stderr_heavy_prob, static_cast<long long>(point.pass ? 1 : 0),
                      static_cast<long long>(point.placeable ? 1 : 0)});
    }
  };

  const mnqc::bench::QvResult isolated = mnqc::bench::quantum_volume(
      mnqc::bench::NodeTopology::single_ring(5), noise, {1.0, 0.0}, config.qv_trials,
      config.seed, config.qv_max_width);
  append_points("single_node", isolated);

  const LinkStage stage = run_link_stage(config);
  const mnqc::bench::LinkModel link{stage.gate.process_fidelity, stage.gate.gate_time_s};
  const mnqc::bench::QvResult linked = mnqc::bench::quantum_volume(
      mnqc::bench::NodeTopology::two_ring(5), noise, link, config.qv_trials, config.seed,
      config.qv_max_width);
  append_points("two_node", linked);

  mnqc::out::write_csv(
      artifact_path(config, "qv.csv"),
      {"device", "width", "trials", "mean_heavy_prob", "stderr_heavy_prob", "pass", "placeable"},
      rows);
  manifest.add_output("qv.csv", "quantum-volume heavy-output statistics per width");
  manifest.add_result("qv_width_single_node", static_cast<double>(isolated.max_passing_width));
  manifest.add_result("qv_width_two_node", static_cast<double>(linked.max_passing_width));
  add_link_results(manifest, stage);
}

void emit_roofline_with_stage(const RunConfig& config, const LinkStage& stage,
                              Manifest& manifest) {
  mnqc::roofline::RooflineMachine machine;
  machine.n_q = 10;
  machine.t_local = config.noise.local_gate_time;
  machine.t_link = stage.gate.gate_time_s;
  machine.n_links = 1;
  const double mccr = mnqc::roofline::compute_mccr(machine);

  const mnqc::bench::NodeTopology device = mnqc::bench::NodeTopology::two_ring(5);
  std::vector<CsvRow> rows;
  for (const std::string& name : config.benchmarks) {
    const mnqc::bench::BenchmarkKind kind = mnqc::bench::benchmark_from_string(name);
    if (kind == mnqc::bench::BenchmarkKind::kQv) continue;  // no fixed circuit to count
    const mnqc::bench::Circuit logical = mnqc::bench::build_benchmark(kind);
    const mnqc::bench::RoutedCircuit routed = mnqc::bench::route(logical, device);
    const mnqc::roofline::BoundResult bound =
        mnqc::roofline::classify_bound(routed.stats, machine);
    const char* kind_name = bound.kind == mnqc::roofline::BoundKind::kCommunication
                                ? "communication"
                                : (bound.kind == mnqc::roofline::BoundKind::kBalanced
                                       ? "balanced"
                                       : "computation");
    rows.push_back({name, static_cast<long long>(routed.stats.n_1q),
                    static_cast<long long>(routed.stats.n_2q),
                    static_cast<long long>(routed.stats.n_comm),
                    static_cast<long long>(routed.stats.depth), routed.stats.gate_density,
                    bound.ccr, bound.mccr, std::string(kind_name), bound.delivered_rate});
    manifest.add_result("ccr_" + name, bound.ccr);
  }
  mnqc::out::write_csv(artifact_path(config, "roofline.csv"),
                       {"benchmark", "n_1q", "n_2q", "n_comm", "depth", "gate_density", "ccr",
                        "mccr", "bound", "delivered_rate"},
                       rows);
  manifest.add_output("roofline.csv", "roofline classification of the benchmark suite");

  std::vector<CsvRow> shift_rows;
  for (int rounds = 0; rounds <= 4; ++rounds) {
    for (const auto mode : {mnqc::roofline::ShiftMode::kPaper,
                            mnqc::roofline::ShiftMode::kRecurrence}) {
      const mnqc::roofline::RooflineMachine shifted = mnqc::roofline::distillation_shift(
          machine, rounds, mode, config.noise.purification_step_time);
      shift_rows.push_back({std::string(mode == mnqc::roofline::ShiftMode::kPaper
                                            ? "paper"
                                            : "recurrence"),
                            static_cast<long long>(rounds), shifted.t_link,
                            mnqc::roofline::compute_mccr(shifted)});
    }
  }
  mnqc::out::write_csv(artifact_path(config, "roofline_shifts.csv"),
                       {"mode", "rounds", "t_link_s", "mccr"}, shift_rows);
  manifest.add_output("roofline_shifts.csv", "balance-point shift under distillation");
  manifest.add_result("mccr", mccr);
}

void emit_qcpa_with_stage(const RunConfig& config, const LinkStage& stage, Manifest& manifest) {
  const double t_star = fidelity_lifetime_s(config.noise);
  std::vector<CsvRow> rows;
  for (const double k : {20.0, 128.0}) {
    for (const double f : {0.9, 0.975}) {
      const double gamma_log10 = mnqc::qcpa::log10_gamma_pec(4, f);
      rows.push_back({std::string("pec"), f, k, gamma_log10,
                      mnqc::qcpa::sampling_overhead_log10(std::pow(10.0, gamma_log10), k)});
    }
    for (const auto bound : {mnqc::qcpa::KnittingBound::kUpper,
                             mnqc::qcpa::KnittingBound::kLower}) {
      const double gamma = mnqc::qcpa::knitting_gamma(bound);
      rows.push_back({std::string(bound == mnqc::qcpa::KnittingBound::kUpper ? "knit_upper"
                                                                             : "knit_lower"),
                      1.0, k, std::log10(gamma),
                      mnqc::qcpa::sampling_overhead_log10(gamma, k)});
    }
    mnqc::qcpa::QcpaQuery query;
    query.d = 4;
    query.f_p = stage.gate.process_fidelity;
    query.t_ll_s = stage.gate.gate_time_s;
    query.t_star_s = t_star;
    query.n_q = 10;
    query.k = k;
    const double link_log10 = mnqc::qcpa::log10_pec_link_gamma(query);
    rows.push_back({std::string("pec_link"), query.f_p, k, link_log10, k * link_log10});
  }
  mnqc::out::write_csv(artifact_path(config, "qcpa.csv"),
                       {"method", "f_p", "k", "log10_gamma_per_gate", "log10_total"}, rows);
  manifest.add_output("qcpa.csv", "PEC vs circuit-knitting sampling overheads");

  const mnqc::qcpa::CrossoverResult gate_crossover =
      mnqc::qcpa::crossover_infidelity(mnqc::qcpa::KnittingBound::kUpper, 0.0, t_star, 0);
  if (gate_crossover.found)
    manifest.add_result("crossover_infidelity", gate_crossover.infidelity);
  const mnqc::qcpa::CrossoverResult linked_crossover = mnqc::qcpa::crossover_infidelity(
      mnqc::qcpa::KnittingBound::kUpper, stage.gate.gate_time_s, t_star, 10);
  if (linked_crossover.found)
    manifest.add_result("crossover_infidelity_with_idling", linked_crossover.infidelity);
  manifest.add_result("knit_lower_log10_k128",
                      mnqc::qcpa::sampling_overhead_log10(
                          mnqc::qcpa::knitting_gamma(mnqc::qcpa::KnittingBound::kLower), 128.0));
  manifest.add_result("pec_log10_f0975_k128",
                      128.0 * mnqc::qcpa::log10_gamma_pec(4, 0.975));
}

void emit_dqpe(const RunConfig& config, Manifest& manifest) {
  const std::vector<double> distribution =
      mnqc::dqpe::qpe_outcome_distribution(config.dqpe_phase, config.dqpe_ancillas);
  std::vector<CsvRow> dist_rows;
  for (std::size_t k = 0; k < distribution.size(); ++k)
    dist_rows.push_back({static_cast<long long>(k), distribution[k]});
  mnqc::out::write_csv(artifact_path(config, "dqpe_distribution.csv"), {"k", "probability"},
                       dist_rows);
  manifest.add_output("dqpe_distribution.csv", "QPE readout distribution");

  std::vector<int> register_sizes = {config.dqpe_ancillas};
  if (config.dqpe_ancillas != 9) register_sizes.push_back(9);
  std::vector<CsvRow> estimator_rows;
  for (int n_a : register_sizes) {
    for (const auto estimator :
         {mnqc::dqpe::PhaseEstimator::kMode, mnqc::dqpe::PhaseEstimator::kExpectedAbs,
          mnqc::dqpe::PhaseEstimator::kMinGrid}) {
      const double rel = mnqc::dqpe::qpe_relative_error(config.dqpe_phase, n_a, estimator);
      estimator_rows.push_back({static_cast<long long>(n_a),
                                std::string(mnqc::dqpe::to_string(estimator)),
                                rel * config.dqpe_phase, rel});
      if (n_a == config.dqpe_ancillas &&
          estimator == mnqc::dqpe::PhaseEstimator::kMinGrid)
        manifest.add_result("min_grid_relative_error", rel);
    }
  }
  mnqc::out::write_csv(artifact_path(config, "dqpe_estimators.csv"),
                       {"n_a", "estimator", "abs_error", "relative_error"}, estimator_rows);
  manifest.add_output("dqpe_estimators.csv", "phase-estimator errors vs register size");

  std::vector<CsvRow> kickback_rows;
  for (int p = 1; p <= 3; ++p) {
    for (const auto& [theta, xi] : std::vector<std::pair<double, double>>{
             {0.7, 0.7}, {1.1, 0.3}, {2.0, 0.5}}) {
      const double simulated = mnqc::dqpe::distributed_kickback_likelihood(p, theta, xi);
      const double closed = mnqc::dqpe::kickback_likelihood_closed_form(p, theta, xi);
      kickback_rows.push_back({static_cast<long long>(p), theta, xi, simulated, closed,
                               std::fabs(simulated - closed)});
    }
  }
  mnqc::out::write_csv(artifact_path(config, "dqpe_kickback.csv"),
                       {"p", "theta", "xi", "simulated", "closed_form", "abs_diff"},
                       kickback_rows);
  manifest.add_output("dqpe_kickback.csv", "distributed kickback vs closed form");

  mnqc::dqpe::DqpeCostQuery query;
  query.epsilon = 1e-4;
  query.delta = 0.1;
  query.epsilon_theta = 1e-3;
  query.gamma = 1.0;
  query.alpha = 1.0;
  query.e_gap = 1.0;
  std::vector<CsvRow> depth_rows;
  query.t_workers = 1.0;
  depth_rows.push_back({std::string("classical"), 1.0,
                        mnqc::dqpe::parallel_depth_model(mnqc::dqpe::DepthVariant::kClassical,
                                                         query)});
  for (double t = 1.0; t <= 1024.0; t *= 2.0) {
    query.t_workers = t;
    depth_rows.push_back(
        {std::string("quantum_distilled"), t,
         mnqc::dqpe::parallel_depth_model(mnqc::dqpe::DepthVariant::kQuantumDistilled, query)});
    depth_rows.push_back({std::string("qdrift"), t,
                          mnqc::dqpe::parallel_depth_model(mnqc::dqpe::DepthVariant::kQdrift,
                                                           query)});
  }
  mnqc::out::write_csv(artifact_path(config, "dqpe_depth.csv"),
                       {"variant", "t_workers", "depth"}, depth_rows);
  manifest.add_output("dqpe_depth.csv", "parallel depth vs worker partitions");

  manifest.add_result("channel_tolerance",
                      mnqc::dqpe::channel_tolerance(query.epsilon, 10));
  manifest.add_result(
      "optimal_workers",
      static_cast<double>(mnqc::dqpe::optimal_worker_count(query.epsilon, query.gamma)));
}

void emit_pipeline(const RunConfig& config, Manifest& manifest) {
  const LinkStage stage = run_link_stage(config);
  std::vector<CsvRow> rows;
  rows.push_back({std::string("physical"), std::string("pump_watts"), stage.pump_watts});
  rows.push_back({std::string("physical"), std::string("herald_prob"), stage.raw.herald_prob});
  rows.push_back({std::string("physical"), std::string("rate_hz"), stage.raw.rate_hz});
  rows.push_back({std::string("physical"), std::string("fidelity"), stage.raw.fidelity});
  rows.push_back({std::string("distillation"), std::string("rounds"),
                  static_cast<double>(config.rounds)});
  rows.push_back({std::string("distillation"), std::string("fidelity"),
                  stage.distilled.fidelity});
  rows.push_back({std::string("distillation"), std::string("success_prob"),
                  stage.distilled.success_prob});
  rows.push_back({std::string("distillation"), std::string("delivery_time_s"),
                  stage.delivery_time_s});
  rows.push_back({std::string("gate"), std::string("t_ll_s"), stage.gate.gate_time_s});
  rows.push_back({std::string("gate"), std::string("f_ll"), stage.gate.process_fidelity});
  rows.push_back({std::string("gate"), std::string("average_gate_fidelity"),
                  stage.gate.average_gate_fidelity});
  mnqc::out::write_csv(artifact_path(config, "pipeline.csv"), {"stage", "quantity", "value"},
                       rows);
  manifest.add_output("pipeline.csv", "chained physical -> distillation -> gate summary");
  add_link_results(manifest, stage);

  if (config.analysis == "roofline") {
    emit_roofline_with_stage(config, stage, manifest);
  } else if (config.analysis == "qcpa") {
    emit_qcpa_with_stage(config, stage, manifest);
  } else if (config.analysis == "gap") {
    emit_gap(config, manifest);
  }
}

int dispatch(const std::string& command, const RunConfig& config, bool perfect_ep) {
  const auto start = std::chrono::steady_clock::now();
  mnqc::out::ensure_directory(config.out_dir);
  Manifest manifest(command, mnqc::cfg::config_to_json(config), config.seed);
  if (command == "m2o-sweep") emit_m2o_sweep(config, manifest);
  else if (command == "distill") emit_distill(config, manifest);
  else if (command == "gate") emit_gate(config, perfect_ep, manifest);
  else if (command == "gap") emit_gap(config, manifest);
  else if (command == "qv") emit_qv(config, manifest);
  else if (command == "roofline") emit_roofline_with_stage(config, run_link_stage(config),
                                                           manifest);
  else if (command == "qcpa") emit_qcpa_with_stage(config, run_link_stage(config), manifest);
  else if (command == "dqpe") emit_dqpe(config, manifest);
  else if (command == "pipeline") emit_pipeline(config, manifest);
  else throw std::invalid_argument("unknown subcommand '" + command + "'");
  const auto end = std::chrono::steady_clock::now();
  manifest.set_runtime_s(std::chrono::duration<double>(end - start).count());
  manifest.write(artifact_path(config, "manifest.json"));
  std::cout << command << ": wrote artifacts to " << config.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mnqc: performance models for multinode quantum computers with "
               "microwave-to-optical interconnects"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  std::string config_path;
  std::string out_override;
  std::string preset_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<int> threads_override;
  bool perfect_ep = false;

  app.add_option("--config", config_path, "config file (sectioned text or JSON)");
  app.add_option("--out", out_override, "output directory (overrides config)");
  app.add_option("--seed", seed_override, "root RNG seed (overrides config)");
  app.add_option("--threads", threads_override, "worker thread budget (overrides config)");
  app.add_option("--preset", preset_override, "converter preset name (overrides config)");

  app.add_subcommand("m2o-sweep", "heralded entanglement generation sweep");
  app.add_subcommand("distill", "nested DEJMPS distillation study");
  auto* gate_cmd = app.add_subcommand("gate", "teleported internode CX characterization");
  gate_cmd->add_flag("--perfect-ep", perfect_ep,
                     "use a perfect EP and noiseless local gates (self-test)");
  app.add_subcommand("gap", "benchmark GAP scan over link time and infidelity");
  app.add_subcommand("qv", "quantum-volume scan with and without the link");
  app.add_subcommand("roofline", "communication roofline classification");
  app.add_subcommand("qcpa", "PEC vs circuit-knitting cost analysis");
  app.add_subcommand("dqpe", "distributed phase-estimation studies");
  app.add_subcommand("pipeline", "full physical -> distillation -> gate -> analysis chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = mnqc::cfg::parse_config(config_path);
    if (!out_override.empty()) config.out_dir = out_override;
    if (!preset_override.empty()) config.preset = preset_override;
    if (seed_override) config.seed = *seed_override;
    if (threads_override) config.threads = *threads_override;
    config.validate();
    const std::string command = app.get_subcommands().front()->get_name();
    return dispatch(command, config, perfect_ep);
  } catch (const mnqc::cfg::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return kExitConfig;
  } catch (const mnqc::out::IoError& error) {
    std::cerr << "io error: " << error.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& error) {
    std::cerr << "domain error: " << error.what() << "\n";
    return kExitDomain;
  } catch (const std::domain_error& error) {
    std::cerr << "domain error: " << error.what() << "\n";
    return kExitDomain;
  } catch (const std::runtime_error& error) {
    std::cerr << "runtime error: " << error.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& error) {
    std::cerr << "unexpected error: " << error.what() << "\n";
    return kExitUnexpected;
  }
}
