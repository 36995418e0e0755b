#include "pbe/fvm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbe/simd/kernels.hpp"

namespace pbe {

SizeGrid::Kind SizeGrid::parse_kind(const std::string& name) {
  if (name == "uniform") return Kind::uniform;
  if (name == "geometric") return Kind::geometric;
  throw std::invalid_argument("unknown grid kind: " + name);
}

SizeGrid SizeGrid::build(double s_min, double s_max, int cells, Kind kind) {
  if (!(0.0 < s_min) || !(s_min < s_max)) throw std::invalid_argument("need 0 < s_min < s_max");
  if (cells < 16) throw std::invalid_argument("size grid needs at least 16 cells");
  SizeGrid g;
  g.kind = kind;
  g.edges.resize(cells + 1);
  if (kind == Kind::uniform) {
    const double w = (s_max - s_min) / cells;
    for (int i = 0; i <= cells; ++i) g.edges[i] = s_min + w * i;
  } else {
    const double r = std::pow(s_max / s_min, 1.0 / cells);
    g.edges[0] = s_min;
    for (int i = 1; i <= cells; ++i) g.edges[i] = g.edges[i - 1] * r;
  }
  g.edges.back() = s_max;
  g.centers.resize(cells);
  for (int i = 0; i < cells; ++i)
    g.centers[i] = kind == Kind::uniform ? 0.5 * (g.edges[i] + g.edges[i + 1])
                                         : std::sqrt(g.edges[i] * g.edges[i + 1]);
  return g;
}

double CellSolution::moment(int j) const {
  double sum = 0.0;
  for (int i = 0; i < grid.cells(); ++i)
    sum += values[i] * std::pow(grid.centers[i], j) * grid.width(i);
  return sum;
}

double CellSolution::l1_distance(const std::function<double(double)>& ref, double s_limit) const {
  double sum = 0.0;
  for (int i = 0; i < grid.cells(); ++i) {
    if (grid.centers[i] > s_limit) break;
    sum += std::abs(values[i] - ref(grid.centers[i])) * grid.width(i);
  }
  return sum;
}

namespace {

// Sectional scheme in cell numbers n_i = c_i * width_i.  Newborn aggregates
// of size x_i + x_j are split between the two bracketing representative
// points (mass-exact split); power-law fragments are deposited with their
// exact per-cell mass.  Mass that leaves the domain on either end is
// accumulated in `leak` so the balance stays auditable to roundoff.
class SectionalSolver {
 public:
  SectionalSolver(const SeparableKernel& kernel, const std::optional<BreakageSpec>& breakage,
                  const SizeGrid& grid)
      : grid_(grid), n_(grid.cells()) {
    const auto& x = grid_.centers;
    for (const auto& t : kernel.terms()) {
      std::vector<double> p(n_), q(n_);
      for (int i = 0; i < n_; ++i) {
        p[i] = t.lambda * std::pow(x[i], to_double(t.alpha));
        q[i] = std::pow(x[i], to_double(t.beta));
      }
      p_.push_back(std::move(p));
      q_.push_back(std::move(q));
    }
    if (breakage) {
      has_breakage_ = true;
      const int ip1 = breakage->fragment_order + 1;
      sel_.resize(n_);
      inv_xpow_.resize(n_);
      center_pow_.resize(n_);
      edge_pow_.resize(n_ + 1);
      frag_number_.resize(n_);
      for (int i = 0; i < n_; ++i) {
        sel_[i] = breakage->sigma_s * std::pow(x[i], breakage->selection_order);
        inv_xpow_[i] = std::pow(x[i], -(ip1 - 1));
        center_pow_[i] = std::pow(x[i], ip1);
      }
      for (int k = 0; k <= n_; ++k) edge_pow_[k] = std::pow(grid_.edges[k], ip1);
      // eta/(i+1) = 1 by the mass normalization, so the mass landing in a
      // whole cell k from a unit-rate source is just the edge-power gap.
      for (int k = 0; k < n_; ++k) frag_number_[k] = (edge_pow_[k + 1] - edge_pow_[k]) / x[k];
    }
    row_.resize(n_);
    rate_.resize(n_);
    freq_.resize(n_);
  }

  void rhs(const std::vector<double>& num, std::vector<double>& dnum, double& dleak) {
    const auto& ops = simd::ops();
    const auto& x = grid_.centers;
    std::fill(dnum.begin(), dnum.end(), 0.0);
    dleak = 0.0;

    // Loss: u_i = sum_t p_t[i] * dot(q_t, n); each particle in cell i
    // aggregates away at frequency u_i.
    loss_into(num, freq_);
    for (int i = 0; i < n_; ++i) dnum[i] -= num[i] * freq_[i];

    // Birth over unordered cell pairs (self pairs at half rate).
    const double top_edge = grid_.edges.back();
    for (int i = 0; i < n_; ++i) {
      if (num[i] == 0.0) continue;
      const std::size_t len = n_ - i;
      std::fill(row_.begin() + i, row_.end(), 0.0);
      for (std::size_t t = 0; t < p_.size(); ++t)
        ops.axpy(p_[t][i], q_[t].data() + i, row_.data() + i, len);
      ops.mul(row_.data() + i, num.data() + i, rate_.data() + i, len);

      int k = i;  // pivot bracket walks forward with j
      for (int j = i; j < n_; ++j) {
        const double rho = (j == i ? 0.5 : 1.0) * num[i] * rate_[j];
        if (rho == 0.0) continue;
        const double v = x[i] + x[j];
        if (v >= top_edge) {
          dleak += rho * v;
          continue;
        }
        while (k + 1 < n_ && x[k + 1] < v) ++k;
        if (k == n_ - 1) {
          dnum[k] += rho;
          dleak += rho * (v - x[k]);
          continue;
        }
        const double f = (x[k + 1] - v) / (x[k + 1] - x[k]);
        dnum[k] += f * rho;
        dnum[k + 1] += (1.0 - f) * rho;
      }
    }

    if (has_breakage_) {
      for (int m = 0; m < n_; ++m) {
        const double events = sel_[m] * num[m];
        if (events == 0.0) continue;
        dnum[m] -= events;
        const double coef = events * inv_xpow_[m];
        ops.axpy(coef, frag_number_.data(), dnum.data(), m);
        // partial segment [e_m, x_m] of the source cell itself
        dnum[m] += coef * (center_pow_[m] - edge_pow_[m]) / x[m];
        // fragments below the bottom edge
        dleak += coef * edge_pow_[0];
      }
    }
  }

  double max_event_frequency(const std::vector<double>& num) {
    loss_into(num, freq_);
    double freq = 0.0;
    for (int i = 0; i < n_; ++i)
      freq = std::max(freq, freq_[i] + (has_breakage_ ? sel_[i] : 0.0));
    return freq;
  }

 private:
  void loss_into(const std::vector<double>& num, std::vector<double>& out) {
    const auto& ops = simd::ops();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t t = 0; t < p_.size(); ++t) {
      const double st = ops.dot(q_[t].data(), num.data(), n_);
      ops.axpy(st, p_[t].data(), out.data(), n_);
    }
  }

  const SizeGrid& grid_;
  int n_;
  std::vector<std::vector<double>> p_, q_;
  std::vector<double> sel_, inv_xpow_, center_pow_, edge_pow_, frag_number_;
  std::vector<double> row_, rate_, freq_;
  bool has_breakage_ = false;
};

}  // namespace

std::vector<CellSolution> fvm_solve_snapshots(const SeparableKernel& kernel,
                                              const std::optional<BreakageSpec>& breakage,
                                              const std::function<double(double)>& c0,
                                              const SizeGrid& grid,
                                              std::span<const double> times, double dt_cfl) {
  if (times.empty()) throw std::invalid_argument("need at least one snapshot time");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] > (i == 0 ? 0.0 : times[i - 1])))
      throw std::invalid_argument("snapshot times must be positive and strictly increasing");
  if (!(dt_cfl > 0.0)) throw std::invalid_argument("dt_cfl must be positive");

  SectionalSolver solver(kernel, breakage, grid);
  const int n = grid.cells();

  std::vector<double> num(n);
  for (int i = 0; i < n; ++i) num[i] = c0(grid.centers[i]) * grid.width(i);
  double leak = 0.0;

  const double freq = solver.max_event_frequency(num);
  const double dt_base = freq > 0.0 ? std::min(dt_cfl, 0.5 / freq) : dt_cfl;

  std::vector<double> k1(n), k2(n), stage(n);
  std::vector<CellSolution> out;
  double t = 0.0;
  for (double target : times) {
    const double span_t = target - t;
    const int steps = std::max(1, static_cast<int>(std::ceil(span_t / dt_base - 1e-12)));
    const double dt = span_t / steps;
    for (int step = 0; step < steps; ++step) {
      double dl1 = 0.0, dl2 = 0.0;
      solver.rhs(num, k1, dl1);
      for (int i = 0; i < n; ++i) stage[i] = num[i] + dt * k1[i];
      solver.rhs(stage, k2, dl2);
      for (int i = 0; i < n; ++i) {
        num[i] += 0.5 * dt * (k1[i] + k2[i]);
        if (num[i] < 0.0 && num[i] > -1e-12) num[i] = 0.0;
        if (std::abs(num[i]) > 1e12)
          throw std::runtime_error("sectional solver unstable: reduce dt_cfl");
      }
      leak += 0.5 * dt * (dl1 + dl2);
    }
    t = target;

    CellSolution snap;
    snap.grid = grid;
    snap.values.resize(n);
    for (int i = 0; i < n; ++i) snap.values[i] = num[i] / grid.width(i);
    snap.time = t;
    snap.mass_leak = leak;
    snap.dt_used = dt;
    out.push_back(std::move(snap));
  }
  return out;
}

CellSolution fvm_solve(const SeparableKernel& kernel, const std::optional<BreakageSpec>& breakage,
                       const std::function<double(double)>& c0, const SizeGrid& grid,
                       double tau_end, double dt_cfl) {
  const double times[] = {tau_end};
  return fvm_solve_snapshots(kernel, breakage, c0, grid, times, dt_cfl).front();
}

CellSolution fvm_solve(const SeparableKernel& kernel, const std::function<double(double)>& c0,
                       const SizeGrid& grid, double tau_end, double dt_cfl) {
  return fvm_solve(kernel, std::nullopt, c0, grid, tau_end, dt_cfl);
}

}  // namespace pbe
