#include "pbe/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace pbe {

double ContractionParams::T_tilde() const { return std::min(tau0, tau1); }

bool ContractionParams::aggregation_region_ok() const {
  if (!(norm_c0 > 0.0) || !(tau0 > 0.0)) return false;
  if (tau0 > 1.0 / (2.0 * norm_c0)) return false;
  const double disc = std::sqrt(1.0 - 2.0 * tau0 * norm_c0);
  return D >= (1.0 - disc) / tau0 && D <= (1.0 + disc) / tau0;
}

void ContractionParams::require_aggregation_region() const {
  if (!aggregation_region_ok())
    throw std::domain_error("parameters outside the aggregation solvability region");
}

ContractionConstant gamma_aggregation(const ContractionParams& p) {
  p.require_aggregation_region();
  const double t = p.T_tilde();
  const double g = t * std::exp(t * p.D) * (p.norm_c0 + 0.5 * t * p.D * p.D + t * p.D);
  return {g, g < 1.0};
}

ContractionConstant gamma_cabe(const ContractionParams& p) {
  if (!(p.sigma > 0.0)) throw std::domain_error("sigma must be positive");
  if (!(p.eta > 0.0)) throw std::domain_error("eta must be positive");
  if (p.selection_order < 1) throw std::domain_error("selection order must be >= 1");
  const double t = p.T_tilde();
  const double breakage =
      (2.0 * p.tau0 + 1.0) * p.eta * std::tgamma(static_cast<double>(p.selection_order)) /
      std::pow(p.sigma, p.selection_order);
  const double g = t * std::exp(2.0 * t * p.D) *
                   (p.norm_c0 + 2.0 * p.D * (p.tau0 * p.D + 1.0) + breakage);
  return {g, g < 1.0};
}

double theta(double h, double gamma) {
  if (h == 0.0) throw std::invalid_argument("h must be nonzero");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("theta requires gamma in (0, 1)");
  return std::abs(1.0 + h) + gamma * std::abs(h);
}

Interval admissible_h(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("admissible_h requires gamma in (0, 1)");
  return {-1.0, 0.0};
}

double apriori_bound(double theta_h, int m, double norm_mu1) {
  if (!(theta_h > 0.0 && theta_h < 1.0))
    throw std::domain_error("a priori bound requires Theta in (0, 1)");
  if (m < 1) throw std::invalid_argument("bound order m must be >= 1");
  return std::pow(theta_h, m) * norm_mu1 / (1.0 - theta_h);
}

double sup_l1_norm(const TimeField& f, double tau0, double s_max, int tau_samples, int panels) {
  if (tau_samples < 1 || panels < 2) throw std::invalid_argument("bad norm sampling parameters");
  std::vector<double> s(panels + 1);
  for (int i = 0; i <= panels; ++i) s[i] = s_max * i / panels;
  std::vector<double> vals(s.size());
  const double w = s_max / panels;

  double best = 0.0;
  for (int it = 0; it < tau_samples; ++it) {
    const double tau = tau_samples == 1 ? tau0 : tau0 * it / (tau_samples - 1);
    evaluate_many(f, s, tau, vals);
    // composite Simpson on |f|; panels is even-adjusted by trapezoid fallback
    double integral = 0.0;
    for (int i = 0; i + 2 <= panels; i += 2)
      integral += (w / 3.0) *
                  (std::abs(vals[i]) + 4.0 * std::abs(vals[i + 1]) + std::abs(vals[i + 2]));
    if (panels % 2 != 0)
      integral += 0.5 * w * (std::abs(vals[panels - 1]) + std::abs(vals[panels]));
    best = std::max(best, integral);
  }
  return best;
}

BoundReport empirical_vs_bound(const ProblemSpec& /*problem*/, const SeriesSolution& sol,
                               const ContractionParams& params,
                               const std::function<double(double, double)>& exact, int k_min,
                               int k_max) {
  if (!exact) throw std::invalid_argument("empirical_vs_bound needs an exact density");
  if (k_min < 1 || k_max < k_min || k_max > sol.order())
    throw std::invalid_argument("bound order range out of bounds");

  BoundReport report;
  const auto gamma = gamma_aggregation(params);
  report.gamma = gamma.gamma;
  report.theta_h = theta(sol.h, gamma.gamma);
  report.preconditions_ok =
      gamma.contractive && sol.h >= -1.0 && sol.h < 0.0 && report.theta_h < 1.0;
  report.norm_mu1 = sup_l1_norm(sol.iterates.at(1), params.tau0);

  constexpr int kPanels = 3000;
  constexpr int kTauSamples = 64;
  constexpr double kSMax = 60.0;
  std::vector<double> s(kPanels + 1);
  for (int i = 0; i <= kPanels; ++i) s[i] = kSMax * i / kPanels;
  std::vector<double> vals(s.size());
  const double w = kSMax / kPanels;

  for (int k = k_min; k <= k_max; ++k) {
    const TimeField psi = sol.partial_sum(k + 1);
    double measured = 0.0;
    for (int it = 0; it < kTauSamples; ++it) {
      const double tau = params.tau0 * it / (kTauSamples - 1);
      evaluate_many(psi, s, tau, vals);
      double integral = 0.0;
      for (int i = 0; i + 2 <= kPanels; i += 2) {
        const double d0 = std::abs(vals[i] - exact(s[i], tau));
        const double d1 = std::abs(vals[i + 1] - exact(s[i + 1], tau));
        const double d2 = std::abs(vals[i + 2] - exact(s[i + 2], tau));
        integral += (w / 3.0) * (d0 + 4.0 * d1 + d2);
      }
      measured = std::max(measured, integral);
    }
    BoundRow row;
    row.k = k;
    row.measured = measured;
    row.bound = apriori_bound(report.theta_h, k, report.norm_mu1);
    row.holds = measured <= row.bound;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace pbe
