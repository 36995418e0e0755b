#include "pbe/hopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbe/errors.hpp"

namespace pbe {

ResidualGrid ResidualGrid::uniform(int resolution, double s_max, double t_max) {
  if (resolution < 1) throw std::invalid_argument("residual grid resolution must be >= 1");
  if (!(s_max > 0.0) || !(t_max > 0.0))
    throw std::invalid_argument("residual grid extents must be positive");
  ResidualGrid g;
  g.s_nodes.resize(resolution + 1);
  g.t_nodes.resize(resolution + 1);
  for (int i = 0; i <= resolution; ++i) {
    g.s_nodes[i] = s_max * i / resolution;
    g.t_nodes[i] = t_max * i / resolution;
  }
  return g;
}

void ResidualGrid::validate() const {
  if (s_nodes.size() < 2 || s_nodes.size() != t_nodes.size())
    throw std::invalid_argument("residual grid needs equal node counts, at least 2");
  for (std::size_t i = 1; i < s_nodes.size(); ++i)
    if (!(s_nodes[i] > s_nodes[i - 1]) || !(t_nodes[i] > t_nodes[i - 1]))
      throw std::invalid_argument("residual grid nodes must be strictly increasing");
}

TimeField residual_field(const ProblemSpec& problem, const TimeField& psi) {
  return psi.derivative_in_time() + linear_L(problem.split, psi) +
         aggregation_M(problem.split, psi, psi);
}

double residual(const ProblemSpec& problem, const SeriesSolution& sol, double s, double tau) {
  const TimeField res = residual_field(problem, sol.partial_sum(sol.order() + 1));
  return res(s, tau);
}

double e_of_h(const ProblemSpec& problem, const ResidualGrid& grid, int K_terms, double h,
              SeriesMode mode) {
  grid.validate();
  const SeriesSolution sol = iterate_series(problem, h, K_terms, mode);
  const TimeField res = residual_field(problem, sol.partial_sum(K_terms + 1));

  const int k = grid.resolution();
  std::vector<double> row(grid.s_nodes.size());
  double sum = 0.0;
  for (double tau : grid.t_nodes) {
    evaluate_many(res, grid.s_nodes, tau, row);
    for (double v : row) sum += v * v;
  }
  return sum / (static_cast<double>(k) * k);
}

namespace {

// Strictly better, or equal with smaller |h| (the tie-break that keeps h
// closest to the contractive region).
bool improves(double e, double h, double best_e, double best_h) {
  if (e < best_e) return true;
  return e == best_e && std::abs(h) < std::abs(best_h);
}

}  // namespace

OptimizeResult optimize_h(const ProblemSpec& problem, const ResidualGrid& grid, int K_terms,
                          double bracket_lo, double bracket_hi, SeriesMode mode) {
  if (!(bracket_lo < bracket_hi) || !(bracket_hi < 0.0))
    throw std::invalid_argument("h bracket must satisfy lo < hi < 0");
  grid.validate();

  OptimizeResult out;
  out.bracket_lo = bracket_lo;
  out.bracket_hi = bracket_hi;
  out.K_terms = K_terms;
  out.grid_resolution = grid.resolution();
  out.grid_s_max = grid.s_nodes.back();
  out.grid_t_max = grid.t_nodes.back();

  constexpr int kScanPoints = 41;
  std::vector<double> hs;
  hs.reserve(kScanPoints + 1);
  for (int i = 0; i < kScanPoints; ++i)
    hs.push_back(i == kScanPoints - 1
                     ? bracket_hi
                     : bracket_lo + (bracket_hi - bracket_lo) * i / (kScanPoints - 1));
  if (bracket_lo <= -1.0 && -1.0 <= bracket_hi &&
      std::none_of(hs.begin(), hs.end(), [](double h) { return h == -1.0; }))
    hs.push_back(-1.0);
  std::sort(hs.begin(), hs.end());

  double best_h = 0.0;
  double best_e = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  bool any_ok = false;
  for (double h : hs) {
    HCandidate cand;
    cand.h = h;
    try {
      cand.e = e_of_h(problem, grid, K_terms, h, mode);
    } catch (const algebra_error&) {
      cand.failed = true;
      cand.e = std::numeric_limits<double>::quiet_NaN();
    }
    if (!cand.failed && improves(cand.e, h, best_e, best_h)) {
      best_e = cand.e;
      best_h = h;
      best_index = out.candidates.size();
      any_ok = true;
    }
    out.candidates.push_back(cand);
  }
  if (!any_ok) throw algebra_error("optimize_h: every candidate h failed");

  // Golden-section refinement between the scan neighbours of the incumbent.
  double lo = best_index > 0 ? out.candidates[best_index - 1].h : best_h;
  double hi = best_index + 1 < out.candidates.size() ? out.candidates[best_index + 1].h : best_h;
  auto eval = [&](double h) {
    ++out.refine_evaluations;
    try {
      const double e = e_of_h(problem, grid, K_terms, h, mode);
      if (improves(e, h, best_e, best_h)) {
        best_e = e;
        best_h = h;
      }
      return e;
    } catch (const algebra_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (hi - lo > 1e-4) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = eval(x2);
    }
  }

  out.h_star = best_h;
  out.e_star = best_e;
  out.outside_safe_region = best_h < -1.0;
  return out;
}

}  // namespace pbe
