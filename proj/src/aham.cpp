#include "pbe/aham.hpp"

#include <cmath>
#include <stdexcept>

#include "pbe/errors.hpp"

namespace pbe {

const char* mode_name(SeriesMode m) { return m == SeriesMode::aham ? "aham" : "classic"; }

SeriesMode parse_mode(const std::string& name) {
  if (name == "aham") return SeriesMode::aham;
  if (name == "classic") return SeriesMode::classic;
  throw std::invalid_argument("unknown series mode: " + name);
}

TimeField SeriesSolution::partial_sum(int n_terms) const {
  if (n_terms < 1 || n_terms > static_cast<int>(iterates.size()))
    throw std::invalid_argument("partial_sum: n_terms out of range");
  TimeField sum = iterates[0];
  for (int i = 1; i < n_terms; ++i) sum += iterates[i];
  return sum;
}

double SeriesSolution::evaluate(double s, double tau, int n_terms) const {
  return partial_sum(n_terms)(s, tau);
}

double SeriesSolution::moment(int j, double tau, int n_terms) const {
  const TimeField psi = partial_sum(n_terms);
  double sum = 0.0;
  for (const auto& [k, f] : psi.coeffs()) sum += std::pow(tau, k) * pbe::moment(f, j);
  return sum;
}

TimeField accelerated_he(const OperatorSplit& split, std::span<const TimeField> iterates,
                         std::vector<TimeField>& ledger) {
  if (iterates.size() != ledger.size() + 1)
    throw std::invalid_argument("accelerated_he: ledger must hold H_0..H_{k-1}");
  TimeField psi;
  for (const auto& mu : iterates) psi += mu;
  TimeField hk = aggregation_M(split, psi, psi);
  for (const auto& hj : ledger) hk = hk - hj;
  ledger.push_back(hk);
  return hk;
}

TimeField classic_homotopy_polynomial(const OperatorSplit& split,
                                      std::span<const TimeField> iterates, int k) {
  if (k < 0 || k >= static_cast<int>(iterates.size()))
    throw std::invalid_argument("classic_homotopy_polynomial: order out of range");
  TimeField qk;
  for (int m = 0; m <= k; ++m) qk += aggregation_M(split, iterates[m], iterates[k - m]);
  return qk;
}

SeriesSolution iterate_series(const ProblemSpec& problem, double h, int K, SeriesMode mode) {
  if (h == 0.0) throw std::invalid_argument("convergence control parameter h must be nonzero");
  if (K < 1) throw std::invalid_argument("iteration count K must be >= 1");

  SeriesSolution sol;
  sol.h = h;
  sol.mode = mode;
  sol.iterates.reserve(K + 1);
  sol.iterates.emplace_back(problem.c0);

  std::vector<TimeField> he_ledger;
  for (int k = 1; k <= K; ++k) {
    try {
      const TimeField& prev = sol.iterates.back();
      const TimeField nonlinear =
          mode == SeriesMode::aham
              ? accelerated_he(problem.split, sol.iterates, he_ledger)
              : classic_homotopy_polynomial(problem.split, sol.iterates, k - 1);
      const TimeField dprev = prev.derivative_in_time();
      TimeField integrand = h * (dprev + linear_L(problem.split, prev) + nonlinear);
      if (k > 1) integrand += dprev;
      sol.iterates.push_back(integrand.integral_in_time());
    } catch (const algebra_error& e) {
      throw algebra_error("iteration " + std::to_string(k) + ": " + e.what());
    }
  }
  return sol;
}

}  // namespace pbe
