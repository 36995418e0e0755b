#include "pbe/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbe/quadrature.hpp"

namespace pbe {

namespace {

// I1(x)/x = (1/2) sum_k (x^2/4)^k / (k! (k+1)!), finite and smooth at 0.
double bessel_i1_over_x_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5;
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

// log(I1(x)/x) via the large-argument expansion; used where the series
// would overflow.  Relative error below 1e-8 for x >= 300.
double log_bessel_i1_over_x_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double correction = 1.0 - 0.375 * inv - (15.0 / 128.0) * inv * inv -
                            (105.0 / 1024.0) * inv * inv * inv;
  return x - 0.5 * std::log(2.0 * M_PI * x) - std::log(x) + std::log(correction);
}

}  // namespace

double bessel_i1(double x) {
  if (x < 0.0) throw std::domain_error("bessel_i1 requires x >= 0");
  if (x > 300.0) return std::exp(log_bessel_i1_over_x_asymptotic(x) + std::log(x));
  return x * bessel_i1_over_x_series(x);
}

double exact_constant(double s, double tau) {
  if (s < 0.0 || tau < 0.0) throw std::domain_error("exact_constant requires s, tau >= 0");
  const double tp2 = tau + 2.0;
  return 4.0 * std::exp(-2.0 * s / tp2) / (tp2 * tp2);
}

double exact_sum(double s, double tau) {
  if (s < 0.0 || tau < 0.0) throw std::domain_error("exact_sum requires s, tau >= 0");
  // c = exp((e^-tau - 2) s - tau) I1(2 s sqrt(T)) / (s sqrt(T)), T = 1 - e^-tau.
  // Written through I1(x)/x both removable singularities (s -> 0, tau -> 0)
  // disappear; for large arguments the exponentials are combined in log
  // space since I1 alone would overflow.
  const double emt = std::exp(-tau);
  const double sqrt_t = std::sqrt(1.0 - emt);
  const double x = 2.0 * s * sqrt_t;
  const double log_prefactor = (emt - 2.0) * s - tau;
  if (x > 300.0)
    return 2.0 * std::exp(log_prefactor + log_bessel_i1_over_x_asymptotic(x));
  return 2.0 * std::exp(log_prefactor) * bessel_i1_over_x_series(x);
}

double exact_product(double s, double tau) {
  if (s < 0.0) throw std::domain_error("exact_product requires s >= 0");
  if (tau < 0.0 || tau > 1.0)
    throw std::domain_error("exact_product valid pre-gelation only (0 <= tau <= 1)");
  // e^{-(1+tau)s} sum_k tau^k s^{3k} / ((k+1)! (2k+1)!); the sum behaves
  // like e^{3 (tau/4)^(1/3) s}, so large arguments take the log-sum-exp
  // branch to keep intermediates finite.
  const double q = tau * s * s * s;
  if (3.0 * std::cbrt(tau / 4.0) * s < 600.0) {
    double term = 1.0;
    double sum = term;
    for (int k = 1; k < 600; ++k) {
      term *= q / (static_cast<double>(k + 1) * (2 * k) * (2 * k + 1));
      sum += term;
      if (term < 1e-14 * sum) break;
    }
    return std::exp(-(1.0 + tau) * s) * sum;
  }
  const double lq = std::log(q);
  const int k_peak = static_cast<int>(std::cbrt(q / 4.0));
  double lmax = -1e300;
  std::vector<double> lt;
  const int k_hi = 4 * k_peak + 64;
  lt.reserve(k_hi + 1);
  for (int k = 0; k <= k_hi; ++k) {
    // ln of tau^k s^{3k} / ((k+1)! (2k+1)!)
    const double v = k * lq - std::lgamma(k + 2.0) - std::lgamma(2.0 * k + 2.0);
    lt.push_back(v);
    lmax = std::max(lmax, v);
    if (k > k_peak && v < lmax - 46.0) break;
  }
  double acc = 0.0;
  for (double v : lt) acc += std::exp(v - lmax);
  return std::exp(-(1.0 + tau) * s + lmax + std::log(acc));
}

ExactId parse_exact_id(const std::string& name) {
  if (name == "constant_exp") return ExactId::constant_exp;
  if (name == "sum_exp") return ExactId::sum_exp;
  if (name == "product_exp") return ExactId::product_exp;
  throw std::invalid_argument("unknown exact solution id: " + name);
}

double exact_density(ExactId id, double s, double tau) {
  switch (id) {
    case ExactId::constant_exp: return exact_constant(s, tau);
    case ExactId::sum_exp: return exact_sum(s, tau);
    case ExactId::product_exp: return exact_product(s, tau);
  }
  throw std::invalid_argument("unknown exact solution id");
}

namespace {

// Asymptotic decay rate of the density in s, used to size the quadrature
// domain so the neglected tail is far below the requested accuracy.
double tail_decay_rate(ExactId id, double tau) {
  switch (id) {
    case ExactId::constant_exp:
      return 2.0 / (tau + 2.0);
    case ExactId::sum_exp: {
      const double r = 1.0 - std::sqrt(1.0 - std::exp(-tau));
      return r * r;
    }
    case ExactId::product_exp:
      // saddle point of the series: the sum grows like e^{3 (tau/4)^(1/3) s},
      // and the net rate hits zero at tau = 1/2 (the gel point of this
      // initial condition, whose second moment is 2)
      return (1.0 + tau) - 3.0 * std::cbrt(tau / 4.0);
  }
  return 1.0;
}

}  // namespace

double exact_moment(ExactId id, int j, double tau) {
  if (j < 0 || j > 1) throw std::invalid_argument("exact_moment supports orders 0 and 1");
  if (id == ExactId::constant_exp) return j == 0 ? 2.0 / (tau + 2.0) : 1.0;

  const double rate = std::max(tail_decay_rate(id, tau), 6e-4);
  const double s_cut = std::min(45.0 / rate, 80000.0);
  auto integrand = [&](double s) { return std::pow(s, j) * exact_density(id, s, tau); };
  // Two pieces: the bulk sits below s ~ 100 while the admissible tail can
  // stretch thousands of units at late times.
  if (s_cut <= 100.0) return integrate(integrand, 0.0, s_cut, 1e-11);
  return integrate(integrand, 0.0, 100.0, 1e-11) + integrate(integrand, 100.0, s_cut, 1e-11);
}

}  // namespace pbe
