#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pbe/rational.hpp"

namespace pbe {

// One term c * s^p * exp(-a*s).  Integrability on [0, inf) requires
// p > -1 and a > 0; both are enforced on construction of an ExpPoly.
struct ExpPolyTerm {
  double coeff = 0.0;
  Rational power{0};
  Rational rate{1};
};

// Relative tolerance below which merged terms are dropped during
// canonicalization.  A term is dropped only when BOTH its raw coefficient
// and its Gamma-weighted integral contribution are below this fraction of
// the polynomial's largest; the second guard keeps high-power terms whose
// tiny coefficients still carry mass (dropping them by coefficient alone
// breaks moment cancellations by many orders of magnitude).
inline constexpr double kTermDropTolerance = 1e-14;

// Per-polynomial term cap.  The recursions grow polynomial degree linearly;
// blowing past the cap signals a runaway configuration and throws
// term_budget_exceeded rather than silently truncating.
std::size_t term_budget();
void set_term_budget(std::size_t cap);

// Finite sum of exponential-polynomial terms, kept canonical: terms sorted
// by (rate, power), duplicate keys merged, negligible coefficients dropped.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpPolyTerm> terms);

  static ExpPoly term(double coeff, const Rational& power, const Rational& rate);

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Pointwise value at s >= 0.  Throws std::domain_error for s = 0 when a
  // negative-power term is present.
  double operator()(double s) const;

  ExpPoly& operator+=(const ExpPoly& other);

 private:
  std::vector<ExpPolyTerm> terms_;
};

ExpPoly operator+(ExpPoly lhs, const ExpPoly& rhs);
ExpPoly operator-(const ExpPoly& lhs, const ExpPoly& rhs);
ExpPoly operator*(double scale, const ExpPoly& f);

// Pointwise product: (c1,p1,a1) x (c2,p2,a2) -> (c1*c2, p1+p2, a1+a2).
ExpPoly pointwise_product(const ExpPoly& f, const ExpPoly& g);

// s^q * f.  The resulting powers must stay > -1.
ExpPoly monomial_multiply(const ExpPoly& f, const Rational& q);

// int_0^s f(s-xi) g(xi) dxi via the Beta identity.  Requires every term
// pair to share one decay rate; otherwise the closed form does not exist
// and unsupported_combination is thrown.
ExpPoly convolve(const ExpPoly& f, const ExpPoly& g);

// int_0^inf f(s) ds = sum c * Gamma(p+1) / a^(p+1).
double total_integral(const ExpPoly& f);

// j-th moment int_0^inf s^j f(s) ds.
double moment(const ExpPoly& f, int j);

// int_s^inf f(xi) dxi as an ExpPoly in the lower limit s.  Closed form via
// the finite incomplete-gamma expansion; requires non-negative integer
// powers.
ExpPoly tail_integral(const ExpPoly& f);

// Batch evaluation over a grid of s values (runtime-dispatched SIMD path).
void evaluate_many(const ExpPoly& f, std::span<const double> s, std::span<double> out);

// Polynomial in time tau with ExpPoly coefficients: sum_k tau^k f_k(s).
// Degrees are unique and sorted; zero coefficients are dropped.
class TimeField {
 public:
  TimeField() = default;
  explicit TimeField(ExpPoly constant_part);
  explicit TimeField(std::vector<std::pair<int, ExpPoly>> coeffs);

  const std::vector<std::pair<int, ExpPoly>>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  // Coefficient of tau^k (zero polynomial when absent).
  const ExpPoly& coeff(int degree) const;
  int max_degree() const;
  std::size_t term_count() const;

  double operator()(double s, double tau) const;

  // Collapse to an ExpPoly at fixed tau.
  ExpPoly at_time(double tau) const;

  // tau-antiderivative vanishing at tau = 0: (k, f) -> (k+1, f/(k+1)).
  TimeField integral_in_time() const;
  // (k, f) -> (k-1, k*f), dropping the k = 0 coefficient.
  TimeField derivative_in_time() const;

  TimeField& operator+=(const TimeField& other);

 private:
  std::vector<std::pair<int, ExpPoly>> coeffs_;
};

TimeField operator+(TimeField lhs, const TimeField& rhs);
TimeField operator-(const TimeField& lhs, const TimeField& rhs);
TimeField operator*(double scale, const TimeField& f);

void evaluate_many(const TimeField& f, std::span<const double> s, double tau,
                   std::span<double> out);

}  // namespace pbe
