#pragma once

#include <span>
#include <string>
#include <vector>

#include "pbe/expoly.hpp"
#include "pbe/pbe_ops.hpp"

namespace pbe {

// A problem instance: initial condition, operator split, time horizon.
struct ProblemSpec {
  ExpPoly c0;
  OperatorSplit split;
  double t_max = 1.0;
  std::string label;
};

enum class SeriesMode { aham, classic };

const char* mode_name(SeriesMode m);
SeriesMode parse_mode(const std::string& name);

// Ordered iterates mu_0..mu_K for a fixed convergence-control parameter h.
// mu_0 is the initial condition lifted to tau-degree 0; every later iterate
// is a tau-integral and vanishes at tau = 0.
struct SeriesSolution {
  std::vector<TimeField> iterates;
  double h = -1.0;
  SeriesMode mode = SeriesMode::aham;

  int order() const { return static_cast<int>(iterates.size()) - 1; }

  // Partial sum psi_{n-1} = mu_0 + ... + mu_{n-1}.
  TimeField partial_sum(int n_terms) const;
  double evaluate(double s, double tau, int n_terms) const;
  double moment(int j, double tau, int n_terms) const;
};

// Accelerated He polynomial H_k = M(psi_k) - sum_{j<k} H_j, with
// H_0 = M(mu_0).  `iterates` holds mu_0..mu_k and `ledger` holds
// H_0..H_{k-1} on entry; H_k is appended and returned.
TimeField accelerated_he(const OperatorSplit& split, std::span<const TimeField> iterates,
                         std::vector<TimeField>& ledger);

// Homotopy polynomial of the classic recursion: the symmetrized Cauchy
// product Q_k = sum_{m+n=k} B(mu_m, mu_n) over ordered pairs.
TimeField classic_homotopy_polynomial(const OperatorSplit& split,
                                      std::span<const TimeField> iterates, int k);

// Drive the recursion
//   mu_1 = int_0^tau h [ dmu_0 + L mu_0 + H_0 ] drho
//   mu_k = int_0^tau ( dmu_{k-1} + h [ dmu_{k-1} + L mu_{k-1} + H_{k-1} ] ) drho
// with H_k replaced by Q_k in classic mode.  Requires h != 0 and K >= 1.
SeriesSolution iterate_series(const ProblemSpec& problem, double h, int K, SeriesMode mode);

inline SeriesSolution iterate_aham(const ProblemSpec& problem, double h, int K) {
  return iterate_series(problem, h, K, SeriesMode::aham);
}
inline SeriesSolution iterate_classic(const ProblemSpec& problem, double h, int K) {
  return iterate_series(problem, h, K, SeriesMode::classic);
}

}  // namespace pbe
