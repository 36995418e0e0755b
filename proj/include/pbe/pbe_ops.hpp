#pragma once

#include <optional>

#include "pbe/expoly.hpp"
#include "pbe/kernels.hpp"

namespace pbe {

// Operator decomposition of the governing equation,
//   dc/dtau + L[c] + M[c] = 0,
// with M the aggregation nonlinearity (loss - gain) and L the breakage
// operator (death - birth); L is zero when no breakage pair is present.
struct OperatorSplit {
  SeparableKernel kernel;
  std::optional<BreakageSpec> breakage;
};

// Symmetrized bilinear form underlying M.  For each kernel term
// (lambda, alpha, beta) and tau-coefficient pair (f_m, g_n):
//   gain += (lambda/2) tau^(m+n) conv(s^alpha f_m, s^beta g_n)
//   loss += (lambda/2) tau^(m+n) [ s^alpha f_m I(s^beta g_n)
//                                + s^alpha g_n I(s^beta f_m) ]
// and the result is loss - gain.  The diagonal call equals M[F].
TimeField aggregation_bilinear(const SeparableKernel& kernel, const TimeField& F,
                               const TimeField& G);

inline TimeField aggregation_M(const OperatorSplit& split, const TimeField& F,
                               const TimeField& G) {
  return aggregation_bilinear(split.kernel, F, G);
}

// Breakage operator applied per tau-coefficient:
//   L[F] = sigma_s s^j F - eta sigma_s s^(i-1) tail(xi^(j-i) F).
TimeField breakage_L(const BreakageSpec& spec, const TimeField& F);

// L including the "no breakage" case.
TimeField linear_L(const OperatorSplit& split, const TimeField& F);

}  // namespace pbe
