#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbe/kernels.hpp"

namespace pbe {

// Truncated size domain split into cells.  Representative points are cell
// midpoints on uniform grids and geometric means on geometric grids.
struct SizeGrid {
  enum class Kind { uniform, geometric };

  std::vector<double> edges;    // N + 1, strictly increasing, all > 0
  std::vector<double> centers;  // N representative points
  Kind kind = Kind::geometric;

  static SizeGrid build(double s_min, double s_max, int cells, Kind kind);
  static Kind parse_kind(const std::string& name);

  int cells() const { return static_cast<int>(centers.size()); }
  double width(int i) const { return edges[i + 1] - edges[i]; }
};

// Number densities at the representative points at one time.
struct CellSolution {
  SizeGrid grid;
  std::vector<double> values;  // number density per cell
  double time = 0.0;
  double mass_leak = 0.0;  // newborn mass beyond s_max plus sub-grid fragment mass
  double dt_used = 0.0;

  double moment(int j) const;
  // Discrete L1 distance sum |c_i - ref(x_i)| dx_i, optionally restricted
  // to cells with centers below s_limit.
  double l1_distance(const std::function<double(double)>& ref,
                     double s_limit = std::numeric_limits<double>::infinity()) const;
};

// Sectional solver for aggregation (optionally coupled with power-law
// breakage) on the truncated domain.  Cell pair events allocate newborn
// mass between the two bracketing representative points, which conserves
// mass to machine precision; off-grid newborn mass is tracked in
// mass_leak.  Explicit Heun stepping with
// dt = min(dt_cfl, 0.5 / max event frequency at tau = 0).
CellSolution fvm_solve(const SeparableKernel& kernel, const std::function<double(double)>& c0,
                       const SizeGrid& grid, double tau_end, double dt_cfl);

CellSolution fvm_solve(const SeparableKernel& kernel, const std::optional<BreakageSpec>& breakage,
                       const std::function<double(double)>& c0, const SizeGrid& grid,
                       double tau_end, double dt_cfl);

// One run, densities captured at each requested time (strictly increasing,
// final entry is the end time).
std::vector<CellSolution> fvm_solve_snapshots(const SeparableKernel& kernel,
                                              const std::optional<BreakageSpec>& breakage,
                                              const std::function<double(double)>& c0,
                                              const SizeGrid& grid,
                                              std::span<const double> times, double dt_cfl);

}  // namespace pbe
