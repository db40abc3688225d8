#include "mnqc/m2o.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "mnqc/bosonic.hpp"
#include "mnqc/constants.hpp"
#include "mnqc/gates.hpp"

namespace mnqc::m2o {
namespace {

const std::array<ConverterPreset, 4>& preset_table() {
  // Demonstrated electro-optic transducer generations (no1..no3) and a
  // projected device (future).  Intrinsic loss rates are the demonstrated
  // values improved by the assumed factor of five.
  static const std::array<ConverterPreset, 4> presets = {{
      {"no1", 60.0, 2.1e6, 1.1e5, 1.4e6, 2.6e5},
      {"no2", 37.0, 1.5e7, 2.2e6, 5.6e6, 1.6e6},
      {"no3", 750.0, 3.3e7, 2.8e7, 3.2e6, 1.2e6},
      {"future", 1.0e3, 1.0e7, 2.0e5, 1.0e7, 2.0e5},
  }};
  return presets;
}

struct HeraldObservables {
  double herald_prob = 0.0;
  double fidelity = 0.0;
  Matrix state;  // unnormalized 4x4 heralded two-qubit operator
};

// Evolves one node's (qubit, mode) state through the transducer loss chain
// and returns the mode matrix elements E[m][m'] = <m|rho|m'> (2x2 qubit
// operators) for m, m' in {0, 1}, plus enough structure to form the heralded
// state.  Truncation d_f applies to the propagating mode.
std::array<std::array<Matrix, 2>, 2> node_mode_blocks(const DerivedParams& p,
                                                      double excitation_prob, int d_f) {
  const HilbertLayout layout{2, d_f};
  Vector psi = Vector::Zero(2L * d_f);
  psi(0) = std::sqrt(1.0 - excitation_prob);       // |g, 0>
  if (d_f > 1) psi(d_f + 1) = std::sqrt(excitation_prob);  // |e, 1>
  DensityMatrix rho = DensityMatrix::pure(layout, psi);

  // Microwave extraction port carries the pump-induced thermal occupation.
  const auto [loss_e, amp_e] = thermal_loss_channels(p.t_e, p.n_add, d_f);
  rho = apply_ladder_channel(rho, loss_e);
  rho = apply_ladder_channel(rho, amp_e);
  // Internal conversion and optical extraction are vacuum-port attenuations.
  rho = apply_ladder_channel(rho, pure_loss_channel(p.t_in, d_f));
  rho = apply_ladder_channel(rho, pure_loss_channel(p.t_o, d_f));

  std::array<std::array<Matrix, 2>, 2> blocks;
  for (int m = 0; m < 2; ++m)
    for (int mp = 0; mp < 2; ++mp) {
      Matrix e = Matrix::Zero(2, 2);
      if (m < d_f && mp < d_f)
        for (int q = 0; q < 2; ++q)
          for (int qp = 0; qp < 2; ++qp) e(q, qp) = rho.data()(q * d_f + m, qp * d_f + mp);
      blocks[static_cast<std::size_t>(m)][static_cast<std::size_t>(mp)] = std::move(e);
    }
  return blocks;
}

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

HeraldObservables herald_at_truncation(const ConverterPreset& preset, const DerivedParams& p,
                                       double excitation_prob, int d_f, bool include_dark) {
  const auto e = node_mode_blocks(p, excitation_prob, d_f);

  // The two surviving modes interfere on a 50:50 beamsplitter and the
  // detectors project onto |1, 0>.  In the Fock basis that projector pulls
  // back to the single Bell-like mode vector v = U^dag|1,0> =
  // cos(theta)|1,0> + sin(theta)|0,1>, so only the 0/1-photon matrix elements
  // of each node enter.  This is exact for number-resolving detectors and
  // avoids forming the joint two-node space at large truncation.
  const double v10 = std::sqrt(0.5), v01 = std::sqrt(0.5);
  Matrix herald = Matrix::Zero(4, 4);
  herald += (v10 * v10) * kron2(e[1][1], e[0][0]);
  herald += (v10 * v01) * kron2(e[1][0], e[0][1]);
  herald += (v01 * v10) * kron2(e[0][1], e[1][0]);
  herald += (v01 * v01) * kron2(e[0][0], e[1][1]);

  if (include_dark) {
    // A dark count turns the no-photon branch <0,0|rho|0,0> into a herald.
    const double window = p.bandwidth_rad_s > 0.0 ? 1.0 / p.bandwidth_rad_s : 0.0;
    const double p_dark = preset.dark_count_rate_hz * window;
    herald += p_dark * kron2(e[0][0], e[0][0]);
  }

  HeraldObservables out;
  out.herald_prob = herald.trace().real();
  if (out.herald_prob > 1e-300) {
    const Vector target = bell_vector(BellLabel::kPsiPlus);
    out.fidelity = (target.adjoint() * herald * target)(0, 0).real() / out.herald_prob;
  }
  out.state = std::move(herald);
  return out;
}

}  // namespace

const ConverterPreset& preset(const std::string& name) {
  for (const ConverterPreset& p : preset_table())
    if (p.name == name) return p;
  std::ostringstream os;
  os << "unknown converter preset '" << name << "'; available:";
  for (const ConverterPreset& p : preset_table()) os << " " << p.name;
  throw std::invalid_argument(os.str());
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const ConverterPreset& p : preset_table()) names.push_back(p.name);
  return names;
}

DerivedParams derive_converter_params(const ConverterPreset& preset, double pump_watts) {
  if (pump_watts < 0.0) throw std::invalid_argument("derive_converter_params: negative pump power");
  DerivedParams d;
  const double omega_pump = kTwoPi * preset.pump_frequency_hz;
  const double gamma_ext_o = kTwoPi * preset.gamma_ext_o_hz;
  const double gamma_tot_o = kTwoPi * (preset.gamma_ext_o_hz + preset.gamma_int_o_hz);
  const double gamma_tot_e = kTwoPi * (preset.gamma_ext_e_hz + preset.gamma_int_e_hz);

  d.pump_photon_number = 4.0 * gamma_ext_o * pump_watts / (kHbar * omega_pump * gamma_tot_o * gamma_tot_o);
  d.g_hz = preset.g0_hz * std::sqrt(d.pump_photon_number);
  const double g_ang = kTwoPi * d.g_hz;
  d.cooperativity = 4.0 * g_ang * g_ang / (gamma_tot_e * gamma_tot_o);
  d.t_e = preset.gamma_ext_e_hz / (preset.gamma_ext_e_hz + preset.gamma_int_e_hz);
  d.t_o = preset.gamma_ext_o_hz / (preset.gamma_ext_o_hz + preset.gamma_int_o_hz);
  d.t_in = 4.0 * d.cooperativity / ((1.0 + d.cooperativity) * (1.0 + d.cooperativity));
  d.bandwidth_rad_s = gamma_tot_e;
  d.cycle_time_s = preset.reset_time_s + 2.0 / d.bandwidth_rad_s;
  d.n_add = preset.k_add_photons_per_watt * pump_watts;
  return d;
}

double pump_power_for_cooperativity(const ConverterPreset& preset, double target) {
  if (target <= 0.0) throw std::invalid_argument("pump_power_for_cooperativity: target must be > 0");
  // C = 4 g0^2 n_p / (gamma_tot_e gamma_tot_o) and n_p is linear in P.
  const double omega_pump = kTwoPi * preset.pump_frequency_hz;
  const double gamma_ext_o = kTwoPi * preset.gamma_ext_o_hz;
  const double gamma_tot_o = kTwoPi * (preset.gamma_ext_o_hz + preset.gamma_int_o_hz);
  const double gamma_tot_e = kTwoPi * (preset.gamma_ext_e_hz + preset.gamma_int_e_hz);
  const double g0_ang = kTwoPi * preset.g0_hz;
  const double n_p_target = target * gamma_tot_e * gamma_tot_o / (4.0 * g0_ang * g0_ang);
  return n_p_target * kHbar * omega_pump * gamma_tot_o * gamma_tot_o / (4.0 * gamma_ext_o);
}

HeraldedEpResult simulate_heralded_cycle(const ConverterPreset& preset, double pump_watts,
                                         double excitation_prob, const CycleOptions& options) {
  if (excitation_prob < 0.0 || excitation_prob > options.excitation_prob_max) {
    std::ostringstream os;
    os << "simulate_heralded_cycle: excitation probability " << excitation_prob
       << " outside [0, " << options.excitation_prob_max << "]";
    throw std::invalid_argument(os.str());
  }
  const DerivedParams params = derive_converter_params(preset, pump_watts);

  int d_f = options.initial_fock_dim;
  HeraldObservables prev = herald_at_truncation(preset, params, excitation_prob, d_f,
                                                options.include_dark_counts);
  while (true) {
    const int next = 2 * d_f;
    if (next > options.max_fock_dim) {
      std::ostringstream os;
      os << "simulate_heralded_cycle: Fock truncation did not converge below d_f = "
         << options.max_fock_dim << " (preset " << preset.name << ", pump " << pump_watts
         << " W, n_add = " << params.n_add << ", last herald_prob " << prev.herald_prob << ")";
      throw std::runtime_error(os.str());
    }
    HeraldObservables cur = herald_at_truncation(preset, params, excitation_prob, next,
                                                 options.include_dark_counts);
    const double dp = std::abs(cur.herald_prob - prev.herald_prob);
    const double df = std::abs(cur.fidelity - prev.fidelity);
    d_f = next;
    prev = std::move(cur);
    if (dp < options.convergence_tol && df < options.convergence_tol) break;
  }

  HeraldedEpResult result{
      pump_watts,
      excitation_prob,
      params,
      prev.herald_prob,
      prev.herald_prob / params.cycle_time_s,
      prev.fidelity,
      1.0 - prev.fidelity,
      d_f,
      DensityMatrix(HilbertLayout::qubits(2), Matrix::Zero(4, 4), TraceFlag::kSubnormalized)};
  if (prev.herald_prob > 1e-300) {
    result.state = DensityMatrix(HilbertLayout::qubits(2), prev.state / prev.herald_prob,
                                 TraceFlag::kNormalized);
  } else {
    result.fidelity = 0.0;
    result.infidelity = 1.0;
  }
  return result;
}

std::vector<HeraldedEpResult> sweep_pump_power(const ConverterPreset& preset,
                                               const std::vector<double>& pump_watts,
                                               double excitation_prob,
                                               const CycleOptions& options) {
  std::vector<HeraldedEpResult> out;
  out.reserve(pump_watts.size());
  for (double p : pump_watts)
    out.push_back(simulate_heralded_cycle(preset, p, excitation_prob, options));
  return out;
}

std::vector<HeraldedEpResult> sweep_excitation_prob(const ConverterPreset& preset,
                                                    double pump_watts,
                                                    const std::vector<double>& excitation_probs,
                                                    const CycleOptions& options) {
  std::vector<HeraldedEpResult> out;
  out.reserve(excitation_probs.size());
  for (double pe : excitation_probs)
    out.push_back(simulate_heralded_cycle(preset, pump_watts, pe, options));
  return out;
}

}  // namespace mnqc::m2o
