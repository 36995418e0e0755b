#pragma once

#include <cstddef>

namespace pbe::simd {

enum class Backend { scalar, avx2 };

// Active backend, chosen once at startup from CPU capabilities.  Tests and
// the CLI may force a backend; set_backend returns false when the requested
// one is not available on this machine.
Backend active_backend();
bool set_backend(Backend b);
bool cpu_supports_avx2();
const char* backend_name(Backend b);

// Flat numeric kernels.  Implementations: one scalar reference, one AVX2
// variant (separate translation unit built with -mavx2 -mfma); selected at
// runtime through this table and equivalence-tested against each other.
struct Ops {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[k] = sum_t c[t] * exp(p[t] * log(s[k]) - a[t] * s[k]);
  // every s[k] must be > 0.
  void (*exp_poly_eval)(const double* c, const double* p, const double* a,
                        std::size_t nterms, const double* s, double* out,
                        std::size_t n);
};

const Ops& ops();
const Ops& ops_for(Backend b);

}  // namespace pbe::simd
