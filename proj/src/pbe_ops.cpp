#include "pbe/pbe_ops.hpp"

namespace pbe {

TimeField aggregation_bilinear(const SeparableKernel& kernel, const TimeField& F,
                               const TimeField& G) {
  std::vector<std::pair<int, ExpPoly>> acc;
  for (const auto& kt : kernel.terms()) {
    const double half = 0.5 * kt.lambda;
    for (const auto& [m, fm] : F.coeffs()) {
      const ExpPoly fa = monomial_multiply(fm, kt.alpha);
      const ExpPoly fb = monomial_multiply(fm, kt.beta);
      for (const auto& [n, gn] : G.coeffs()) {
        const ExpPoly ga = monomial_multiply(gn, kt.alpha);
        const ExpPoly gb = monomial_multiply(gn, kt.beta);
        ExpPoly loss = total_integral(gb) * fa + total_integral(fb) * ga;
        ExpPoly gain = convolve(fa, gb);
        acc.emplace_back(m + n, half * (loss - gain));
      }
    }
  }
  return TimeField(std::move(acc));
}

TimeField breakage_L(const BreakageSpec& spec, const TimeField& F) {
  const int i = spec.fragment_order;
  const int j = spec.selection_order;
  std::vector<std::pair<int, ExpPoly>> acc;
  for (const auto& [k, fk] : F.coeffs()) {
    ExpPoly death = spec.sigma_s * monomial_multiply(fk, Rational(j));
    ExpPoly birth = spec.eta * spec.sigma_s *
                    monomial_multiply(tail_integral(monomial_multiply(fk, Rational(j - i))),
                                      Rational(i - 1));
    acc.emplace_back(k, death - birth);
  }
  return TimeField(std::move(acc));
}

TimeField linear_L(const OperatorSplit& split, const TimeField& F) {
  if (!split.breakage) return TimeField{};
  return breakage_L(*split.breakage, F);
}

}  // namespace pbe
