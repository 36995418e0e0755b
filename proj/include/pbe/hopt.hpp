#pragma once

#include <vector>

#include "pbe/aham.hpp"

namespace pbe {

// Tensor grid for the discrete squared residual: K+1 nodes in s and in tau.
struct ResidualGrid {
  std::vector<double> s_nodes;
  std::vector<double> t_nodes;

  static ResidualGrid uniform(int resolution, double s_max, double t_max);

  int resolution() const { return static_cast<int>(s_nodes.size()) - 1; }
  void validate() const;
};

// Residual of a truncated solution in closed form:
// Res = dpsi/dtau + L[psi] + M[psi].
TimeField residual_field(const ProblemSpec& problem, const TimeField& psi);

// Pointwise residual of the full truncation carried by `sol`.
double residual(const ProblemSpec& problem, const SeriesSolution& sol, double s, double tau);

// E(h) = (1/K^2) sum_i sum_j Res^2(s_i, tau_j) for the K_terms-order series
// built at this h.
double e_of_h(const ProblemSpec& problem, const ResidualGrid& grid, int K_terms, double h,
              SeriesMode mode = SeriesMode::aham);

struct HCandidate {
  double h = 0.0;
  double e = 0.0;
  bool failed = false;  // algebra error at this h
};

struct OptimizeResult {
  double h_star = 0.0;
  double e_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int K_terms = 0;
  int grid_resolution = 0;
  double grid_s_max = 0.0;
  double grid_t_max = 0.0;
  std::vector<HCandidate> candidates;
  int refine_evaluations = 0;
  bool outside_safe_region = false;  // h* < -1, beyond the contractive range
};

// Coarse scan (41 equispaced candidates, h = -1 always included when inside
// the bracket) followed by golden-section refinement to |dh| <= 1e-4.
// Deterministic; ties resolved toward the smallest |h|.
OptimizeResult optimize_h(const ProblemSpec& problem, const ResidualGrid& grid, int K_terms,
                          double bracket_lo = -2.0, double bracket_hi = -1e-3,
                          SeriesMode mode = SeriesMode::aham);

}  // namespace pbe
