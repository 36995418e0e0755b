#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace pbe {

// Exact rational exponents. Size exponents stay small (denominators up to a
// few hundred even for the sixth-power kernels), so 64-bit components are
// ample.
using Rational = boost::rational<std::int64_t>;

inline Rational ratio(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline bool is_nonnegative_integer(const Rational& r) {
  return r.denominator() == 1 && r.numerator() >= 0;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace pbe
