#pragma once

#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "pbe/expoly.hpp"

namespace pbe::testing {

struct TermSpec {
  double coeff;
  Rational power;
  Rational rate;
};

// Coefficient-by-coefficient comparison against an expected canonical term
// list: same keys, coefficients within rel_tol.
inline void require_terms(const ExpPoly& got, const std::vector<TermSpec>& expected,
                          double rel_tol = 1e-12) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    const auto& t = got.terms()[i];
    CHECK(t.power == expected[i].power);
    CHECK(t.rate == expected[i].rate);
    CHECK(t.coeff == doctest::Approx(expected[i].coeff).epsilon(rel_tol));
  }
}

inline double max_abs_coeff(const ExpPoly& f) {
  double m = 0.0;
  for (const auto& t : f.terms()) m = std::max(m, std::abs(t.coeff));
  return m;
}

inline double max_abs_coeff(const TimeField& f) {
  double m = 0.0;
  for (const auto& [k, poly] : f.coeffs()) m = std::max(m, max_abs_coeff(poly));
  return m;
}

// Term-level closeness of two fields: every coefficient of a - b is tiny
// relative to the largest coefficient present.
inline void check_fields_close(const TimeField& a, const TimeField& b, double rel_tol = 1e-12) {
  const double scale = std::max({max_abs_coeff(a), max_abs_coeff(b), 1e-300});
  const TimeField diff = a - b;
  CHECK(max_abs_coeff(diff) <= rel_tol * scale);
}

// Random ExpPoly with one shared decay rate; integer powers by default.
inline ExpPoly random_expoly(std::mt19937_64& rng, int max_terms = 4, bool integer_powers = true,
                             Rational rate = Rational(1)) {
  std::uniform_int_distribution<int> n_terms(1, max_terms);
  std::uniform_int_distribution<int> ipow(0, 4);
  std::uniform_int_distribution<int> denom_pick(0, 3);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  const int n = n_terms(rng);
  std::vector<ExpPolyTerm> terms;
  for (int i = 0; i < n; ++i) {
    Rational p(ipow(rng));
    if (!integer_powers) {
      static const std::int64_t denoms[] = {1, 2, 3, 6};
      p += Rational(1, denoms[denom_pick(rng)]);
    }
    terms.push_back({coeff(rng), p, rate});
  }
  return ExpPoly(std::move(terms));
}

}  // namespace pbe::testing
