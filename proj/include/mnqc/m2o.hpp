#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mnqc/density_matrix.hpp"

namespace mnqc::m2o {

// Microwave-to-optical transducer parameter set.  All rates are given as
// nu = omega / 2pi in Hz (the convention used in experimental tables); the
// model converts to angular frequencies internally where needed.
struct ConverterPreset {
  std::string name;
  double g0_hz = 0.0;          // vacuum electro-optic coupling / 2pi
  double gamma_ext_o_hz = 0.0; // optical external coupling / 2pi
  double gamma_int_o_hz = 0.0; // optical intrinsic loss / 2pi
  double gamma_ext_e_hz = 0.0; // microwave external coupling / 2pi
  double gamma_int_e_hz = 0.0; // microwave intrinsic loss / 2pi
  double k_add_photons_per_watt = 1.0e3;  // pump-induced thermal occupation, 1 photon/mW
  double dark_count_rate_hz = 50.0;
  double pump_frequency_hz = 193.4e12;    // optical pump / 2pi
  double reset_time_s = 50e-9;            // qubit-mode preparation time t1
};

// Registered device generations: no1..no3 are demonstrated platforms, future
// is the projected device.
const ConverterPreset& preset(const std::string& name);
std::vector<std::string> preset_names();

struct DerivedParams {
  double pump_photon_number = 0.0;  // n_p
  double g_hz = 0.0;                // parametric coupling g0 sqrt(n_p) / 2pi
  double cooperativity = 0.0;       // C = 4 g^2 / (gamma_tot_e gamma_tot_o)
  double t_e = 0.0;                 // microwave extraction efficiency
  double t_in = 0.0;                // internal conversion efficiency 4C/(1+C)^2
  double t_o = 0.0;                 // optical extraction efficiency
  double bandwidth_rad_s = 0.0;     // B ~ gamma_tot_e (angular)
  double cycle_time_s = 0.0;        // t_tot = reset + 2/B
  double n_add = 0.0;               // thermal occupation injected at the microwave port
};

DerivedParams derive_converter_params(const ConverterPreset& preset, double pump_watts);

// Pump power at which the cooperativity reaches a target value (default 1).
double pump_power_for_cooperativity(const ConverterPreset& preset, double target = 1.0);

struct CycleOptions {
  int initial_fock_dim = 5;
  int max_fock_dim = 2048;
  double convergence_tol = 1e-4;  // absolute shift of herald_prob and fidelity
  bool include_dark_counts = true;
  double excitation_prob_max = 0.5;
};

struct HeraldedEpResult {
  double pump_watts = 0.0;
  double excitation_prob = 0.0;
  DerivedParams params;
  double herald_prob = 0.0;   // P(detector A = 1 photon, detector B = 0) per attempt
  double rate_hz = 0.0;       // herald_prob / t_tot
  double fidelity = 0.0;      // <Psi+|rho|Psi+> of the heralded two-qubit state
  double infidelity = 0.0;
  int fock_dim = 0;           // truncation at which the observables converged
  DensityMatrix state;        // heralded two-qubit state (node A, node B)
};

// Simulates one heralded entanglement attempt: each node prepares
// sqrt(1-Pe)|g,0> + sqrt(Pe)|e,1> on (qubit, mode), the mode passes the
// transducer loss chain (thermal-noise beamsplitter T_e, internal conversion
// T_in, optical extraction T_o), the surviving optical modes interfere on a
// 50:50 beamsplitter and the (1 photon at A, 0 at B) detector pattern is kept.
// Fock truncation is doubled until herald probability and fidelity move by
// less than `convergence_tol`; throws std::runtime_error with a diagnostic if
// `max_fock_dim` is reached without convergence.
HeraldedEpResult simulate_heralded_cycle(const ConverterPreset& preset, double pump_watts,
                                         double excitation_prob, const CycleOptions& options = {});

std::vector<HeraldedEpResult> sweep_pump_power(const ConverterPreset& preset,
                                               const std::vector<double>& pump_watts,
                                               double excitation_prob,
                                               const CycleOptions& options = {});

std::vector<HeraldedEpResult> sweep_excitation_prob(const ConverterPreset& preset,
                                                    double pump_watts,
                                                    const std::vector<double>& excitation_probs,
                                                    const CycleOptions& options = {});

}  // namespace mnqc::m2o
