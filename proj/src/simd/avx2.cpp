#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "backends.hpp"

// AVX2/FMA variants of the numeric kernels, including 4-lane exp and log.
// exp: argument reduction x = n*ln2 + r, |r| <= ln2/2, degree-13 Taylor for
// e^r, two-step 2^n scaling so subnormal results stay finite.
// log: exponent/mantissa split to m in [sqrt2/2, sqrt2), atanh series in
// z = (m-1)/(m+1).  Both stay within a few ulp of libm over the ranges the
// solver uses; the equivalence suite pins scalar-vs-AVX2 agreement.

namespace pbe::simd {

namespace {

inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d overflow = _mm256_set1_pd(709.782712893384);
  const __m256d underflow = _mm256_set1_pd(-745.133219101941);

  const __m256d x_clamped =
      _mm256_max_pd(_mm256_min_pd(x, _mm256_set1_pd(710.0)), _mm256_set1_pd(-746.0));
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x_clamped, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x_clamped);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  // e^r by Horner, coefficients 1/k!
  __m256d poly = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 479001600.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 39916800.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 3628800.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 362880.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 40320.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 5040.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 720.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 120.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 24.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 6.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(0.5));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0));

  // 2^n in two halves: n1 = floor(n/2), n2 = n - n1; each half has a
  // representable power-of-two factor even when 2^n itself is subnormal.
  const __m256d half_n = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)),
                                         _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  const __m256d rest_n = _mm256_sub_pd(n, half_n);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256i e1 = _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(half_n)), bias);
  const __m256i e2 = _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(rest_n)), bias);
  const __m256d scale1 = _mm256_castsi256_pd(_mm256_slli_epi64(e1, 52));
  const __m256d scale2 = _mm256_castsi256_pd(_mm256_slli_epi64(e2, 52));
  __m256d result = _mm256_mul_pd(_mm256_mul_pd(poly, scale1), scale2);

  result = _mm256_blendv_pd(result, _mm256_setzero_pd(), _mm256_cmp_pd(x, underflow, _CMP_LT_OQ));
  result = _mm256_blendv_pd(result, _mm256_set1_pd(HUGE_VAL),
                            _mm256_cmp_pd(x, overflow, _CMP_GT_OQ));
  return result;
}

inline __m256d log4(__m256d x) {
  // Requires normal positive inputs.
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_mask = _mm256_set1_epi64x(0x7ffull << 52);
  const __m256i mant_bits =
      _mm256_or_si256(_mm256_andnot_si256(exp_mask, bits), _mm256_set1_epi64x(1023ll << 52));
  __m256d m = _mm256_castsi256_pd(mant_bits);  // in [1, 2)

  // Biased exponent via shifted bits; extract as packed 32-bit then convert.
  const __m256i exp_field = _mm256_srli_epi64(bits, 52);
  alignas(32) std::int64_t ebuf[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(ebuf), exp_field);
  __m256d e = _mm256_set_pd(static_cast<double>(ebuf[3] - 1023), static_cast<double>(ebuf[2] - 1023),
                            static_cast<double>(ebuf[1] - 1023), static_cast<double>(ebuf[0] - 1023));

  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d too_big = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), too_big);
  e = _mm256_blendv_pd(e, _mm256_add_pd(e, _mm256_set1_pd(1.0)), too_big);

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d w = _mm256_mul_pd(z, z);

  __m256d poly = _mm256_set1_pd(1.0 / 21.0);
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 19.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 17.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, w, _mm256_set1_pd(1.0 / 3.0));
  poly = _mm256_fmadd_pd(poly, w, one);

  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d t = _mm256_mul_pd(_mm256_add_pd(z, z), poly);
  return _mm256_add_pd(_mm256_fmadd_pd(e, ln2_hi, t), _mm256_mul_pd(e, ln2_lo));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double sum = buf[0] + buf[1] + buf[2] + buf[3];
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void mul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void exp_poly_eval_avx2(const double* c, const double* p, const double* a,
                        std::size_t nterms, const double* s, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d sv = _mm256_loadu_pd(s + k);
    const __m256d ls = log4(sv);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t t = 0; t < nterms; ++t) {
      const __m256d arg =
          _mm256_fmsub_pd(_mm256_set1_pd(p[t]), ls, _mm256_mul_pd(_mm256_set1_pd(a[t]), sv));
      acc = _mm256_fmadd_pd(_mm256_set1_pd(c[t]), exp4(arg), acc);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < n; ++k) {
    const double ls = std::log(s[k]);
    double acc = 0.0;
    for (std::size_t t = 0; t < nterms; ++t) acc += c[t] * std::exp(p[t] * ls - a[t] * s[k]);
    out[k] = acc;
  }
}

}  // namespace

const Ops kAvx2Ops = {dot_avx2, mul_avx2, axpy_avx2, exp_poly_eval_avx2};

}  // namespace pbe::simd
