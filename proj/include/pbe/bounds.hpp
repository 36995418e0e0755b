#pragma once

#include <functional>
#include <vector>

#include "pbe/aham.hpp"

namespace pbe {

// Inputs to the contraction constants.  norm_c0 is the sup-in-tau L1 norm
// of the initial condition; D the ball radius; T_tilde = min(tau0, tau1);
// sigma, eta, selection_order enter only the coupled-problem constant.
struct ContractionParams {
  double norm_c0 = 1.0;
  double D = 2.0;
  double tau0 = 0.1;
  double tau1 = 0.1;
  double sigma = 1.0;
  double eta = 2.0;
  int selection_order = 1;  // j

  double T_tilde() const;

  // Solvability region of the aggregation theorem:
  // tau0 <= 1/(2 norm_c0) and D inside
  // [(1 - sqrt(1 - 2 tau0 norm_c0))/tau0, (1 + sqrt(...))/tau0].
  bool aggregation_region_ok() const;
  void require_aggregation_region() const;
};

struct ContractionConstant {
  double gamma = 0.0;
  bool contractive = false;  // gamma < 1
};

// gamma = T e^{T D} (norm_c0 + T D^2 / 2 + T D)
ContractionConstant gamma_aggregation(const ContractionParams& p);

// gamma2 = T e^{2 T D} (norm_c0 + 2 D (tau0 D + 1) + (2 tau0 + 1) eta (j-1)! / sigma^j)
ContractionConstant gamma_cabe(const ContractionParams& p);

// Theta_h = |1 + h| + gamma |h|
double theta(double h, double gamma);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// The h-range on which Theta_h < 1 is achievable for any gamma in (0, 1):
// [-1, 0).  Outside it the case analysis demands gamma < -1 or gamma <= ...,
// which no positive gamma satisfies.
Interval admissible_h(double gamma);

// Theta^m norm_mu1 / (1 - Theta); requires Theta in (0, 1), m >= 1.
double apriori_bound(double theta_h, int m, double norm_mu1);

// Sup-over-tau L1 norm on s in [0, 60], maximised over tau samples in
// [0, tau0]; |.| breaks the closed-form algebra so this is numeric by
// design (composite Simpson, 64 tau samples).
double sup_l1_norm(const TimeField& f, double tau0, double s_max = 60.0, int tau_samples = 64,
                   int panels = 3000);

struct BoundRow {
  int k = 0;
  double measured = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct BoundReport {
  double gamma = 0.0;
  double theta_h = 0.0;
  double norm_mu1 = 0.0;
  bool preconditions_ok = false;  // gamma < 1 and h in [-1, 0)
  std::vector<BoundRow> rows;
};

// Measured sup-L1 error of psi_k against an exact density vs the a priori
// bound, for k in [k_min, k_max].  A violation with preconditions_ok ==
// false is a theorem-precondition failure, not a solver bug.
BoundReport empirical_vs_bound(const ProblemSpec& problem, const SeriesSolution& sol,
                               const ContractionParams& params,
                               const std::function<double(double, double)>& exact, int k_min,
                               int k_max);

}  // namespace pbe
