#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "pbe/expoly.hpp"
#include "pbe/simd/kernels.hpp"

using namespace pbe;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -3.0,
                               double hi = 3.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool close_rel(double a, double b, double rel, double abs_floor = 1e-280) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), abs_floor / rel});
}

}  // namespace

TEST_CASE("backend dispatch") {
  CHECK(simd::set_backend(simd::Backend::scalar));
  CHECK(simd::active_backend() == simd::Backend::scalar);
  if (simd::cpu_supports_avx2()) {
    CHECK(simd::set_backend(simd::Backend::avx2));
    CHECK(simd::active_backend() == simd::Backend::avx2);
  } else {
    CHECK_FALSE(simd::set_backend(simd::Backend::avx2));
  }
  simd::set_backend(simd::cpu_supports_avx2() ? simd::Backend::avx2 : simd::Backend::scalar);
}

TEST_CASE("scalar and AVX2 kernels agree: dot, mul, axpy") {
  if (!simd::cpu_supports_avx2()) return;  // nothing to compare on this machine
  const auto& s = simd::ops_for(simd::Backend::scalar);
  const auto& v = simd::ops_for(simd::Backend::avx2);
  std::mt19937_64 rng(77);
  for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{7},
                        std::size_t{16}, std::size_t{121}, std::size_t{1024}}) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    CHECK(close_rel(s.dot(a.data(), b.data(), n), v.dot(a.data(), b.data(), n), 1e-13));

    std::vector<double> out_s(n), out_v(n);
    s.mul(a.data(), b.data(), out_s.data(), n);
    v.mul(a.data(), b.data(), out_v.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(out_s[i] == out_v[i]);

    auto y0 = random_vec(rng, n);
    auto y_s = y0;
    auto y_v = y0;
    s.axpy(1.7, a.data(), y_s.data(), n);
    v.axpy(1.7, a.data(), y_v.data(), n);
    // FMA vs two roundings: compare against the pre-cancellation magnitude
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = std::abs(1.7 * a[i]) + std::abs(y0[i]);
      CHECK(std::abs(y_s[i] - y_v[i]) <= 1e-15 * scale);
    }
  }
}

TEST_CASE("scalar and AVX2 kernels agree: exponential-polynomial batches") {
  if (!simd::cpu_supports_avx2()) return;
  const auto& sc = simd::ops_for(simd::Backend::scalar);
  const auto& vx = simd::ops_for(simd::Backend::avx2);
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  std::uniform_real_distribution<double> power(-0.5, 20.0);
  std::uniform_real_distribution<double> rate(0.25, 4.0);
  std::uniform_real_distribution<double> grid(1e-6, 60.0);

  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t nt = 1 + rep % 9;
    std::vector<double> c(nt), p(nt), a(nt);
    for (std::size_t t = 0; t < nt; ++t) {
      c[t] = coeff(rng);
      p[t] = power(rng);
      a[t] = rate(rng);
    }
    const std::size_t n = 1 + static_cast<std::size_t>(rep) * 3;
    std::vector<double> s(n);
    for (auto& x : s) x = grid(rng);
    std::vector<double> out_s(n), out_v(n);
    sc.exp_poly_eval(c.data(), p.data(), a.data(), nt, s.data(), out_s.data(), n);
    vx.exp_poly_eval(c.data(), p.data(), a.data(), nt, s.data(), out_v.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CAPTURE(s[i]);
      // the sum can cancel; bound the backend difference by the
      // absolute-value sum of the terms
      double scale = 1e-250;
      for (std::size_t t = 0; t < nt; ++t)
        scale += std::abs(c[t]) * std::exp(p[t] * std::log(s[i]) - a[t] * s[i]);
      CHECK(std::abs(out_s[i] - out_v[i]) <= 5e-13 * scale);
    }
  }
}

TEST_CASE("AVX2 exponential handles extreme arguments like libm") {
  if (!simd::cpu_supports_avx2()) return;
  const auto& vx = simd::ops_for(simd::Backend::avx2);
  // single term c=1, p=0: out = exp(-a s); push the product far into
  // underflow and near overflow
  const double c = 1.0, p = 0.0;
  for (double a : {1e-8, 1.0, 12.0, 40.0}) {
    std::vector<double> s = {1e-6, 0.1, 17.0, 59.0};
    std::vector<double> out(s.size());
    vx.exp_poly_eval(&c, &p, &a, 1, s.data(), out.data(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(close_rel(out[i], std::exp(-a * s[i]), 1e-13, 1e-300));
  }
}

TEST_CASE("evaluate_many routes through the active backend and matches pointwise eval") {
  const ExpPoly f({{2.0, ratio(1, 2), ratio(2)}, {-0.5, ratio(3), ratio(1)}});
  std::vector<double> s = {0.0, 0.3, 1.0, 2.5, 10.0, 45.0};
  std::vector<double> out(s.size());
  for (auto backend : {simd::Backend::scalar, simd::Backend::avx2}) {
    if (backend == simd::Backend::avx2 && !simd::cpu_supports_avx2()) continue;
    simd::set_backend(backend);
    evaluate_many(f, s, out);
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(close_rel(out[i], f(s[i]), 1e-12, 1e-300));
  }
  simd::set_backend(simd::cpu_supports_avx2() ? simd::Backend::avx2 : simd::Backend::scalar);
}

TEST_CASE("batch evaluation rejects negative abscissae, resolves zeros exactly") {
  const ExpPoly f({{1.5, ratio(0), ratio(1)}, {2.0, ratio(2), ratio(1)}});
  std::vector<double> s = {0.0, 1.0};
  std::vector<double> out(2);
  evaluate_many(f, s, out);
  CHECK(out[0] == 1.5);
  std::vector<double> bad = {-1.0};
  std::vector<double> bout(1);
  CHECK_THROWS_AS(evaluate_many(f, bad, bout), std::domain_error);
}

TEST_CASE("deterministic outputs per backend") {
  std::mt19937_64 rng(79);
  const auto a = random_vec(rng, 257);
  const auto b = random_vec(rng, 257);
  const auto& ops = simd::ops();
  const double first = ops.dot(a.data(), b.data(), a.size());
  for (int rep = 0; rep < 5; ++rep)
    CHECK(ops.dot(a.data(), b.data(), a.size()) == first);
}
