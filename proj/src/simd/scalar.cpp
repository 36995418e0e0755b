#include <cmath>
#include <cstddef>

#include "backends.hpp"

// Reference kernels.  Plain loops, no reassociation tricks; the SIMD
// variants are equivalence-tested against these.

namespace pbe::simd {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void exp_poly_eval_scalar(const double* c, const double* p, const double* a,
                          std::size_t nterms, const double* s, double* out,
                          std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double sk = s[k];
    const double ls = std::log(sk);
    double acc = 0.0;
    for (std::size_t t = 0; t < nterms; ++t)
      acc += c[t] * std::exp(p[t] * ls - a[t] * sk);
    out[k] = acc;
  }
}

}  // namespace

const Ops kScalarOps = {dot_scalar, mul_scalar, axpy_scalar, exp_poly_eval_scalar};

}  // namespace pbe::simd
