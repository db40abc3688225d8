#include "mnqc/qcpa.hpp"

#include <cmath>
#include <stdexcept>

namespace mnqc::qcpa {

namespace {

void check_dim(int d) {
  if (d != 2 && d != 4) throw std::invalid_argument("gamma_pec: d must be 2 or 4");
}

}  // namespace

double log10_gamma_pec(int d, double f_p) {
  check_dim(d);
  if (f_p > 1.0 + 1e-12) throw std::invalid_argument("gamma_pec: fidelity above 1");
  const double d2 = static_cast<double>(d) * d;
  const double base = (d2 * std::min(f_p, 1.0) - 1.0) / (d2 - 1.0);
  if (base <= 0.0) throw std::domain_error("gamma_pec: F_p <= 1/d^2 is outside the PEC domain");
  const double exponent = -4.0 * (d2 - 1.0) / d2;
  return exponent * std::log10(base);
}

double gamma_pec(int d, double f_p) { return std::pow(10.0, log10_gamma_pec(d, f_p)); }

double log10_pec_link_gamma(const QcpaQuery& query) {
  if (query.t_ll_s < 0.0 || query.t_star_s <= 0.0 || query.n_q < 0) {
    throw std::invalid_argument("pec_link_gamma: bad decoherence parameters");
  }
  double total = log10_gamma_pec(query.d, query.f_p);
  if (query.n_q > 0 && query.t_ll_s > 0.0) {
    const double spectator_fidelity = std::exp(-query.t_ll_s / query.t_star_s);
    total += query.n_q * log10_gamma_pec(2, spectator_fidelity);
  }
  return total;
}

double pec_link_gamma(const QcpaQuery& query) {
  return std::pow(10.0, log10_pec_link_gamma(query));
}

double knitting_gamma(KnittingBound bound) {
  return bound == KnittingBound::kUpper ? 9.0 : 4.0;
}

double sampling_overhead_log10(double gamma, double k) {
  if (gamma < 1.0) throw std::invalid_argument("sampling_overhead: gamma must be >= 1");
  if (k < 0.0) throw std::invalid_argument("sampling_overhead: negative gate count");
  return k * std::log10(gamma);
}

CrossoverResult crossover_infidelity(KnittingBound bound, double t_ll_s, double t_star_s,
                                     int n_q) {
  const double target = std::log10(knitting_gamma(bound));
  QcpaQuery query;
  query.t_ll_s = t_ll_s;
  query.t_star_s = t_star_s;
  query.n_q = n_q;
  const auto log_gamma_at = [&](double infidelity) {
    query.f_p = 1.0 - infidelity;
    return log10_pec_link_gamma(query);
  };
  CrossoverResult result;
  // Find the domain edge: F_p must stay above 1/d^2 = 1/16.
  const double max_infidelity = 1.0 - 1.0 / 16.0 - 1e-9;
  if (log_gamma_at(0.0) >= target) return result;  // already above at a perfect link
  double lo = 0.0;
  double hi = max_infidelity;
  if (log_gamma_at(hi) < target) return result;  // never reaches the bound
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (log_gamma_at(mid) < target ? lo : hi) = mid;
  }
  result.found = true;
  result.infidelity = 0.5 * (lo + hi);
  return result;
}

}  // namespace mnqc::qcpa
