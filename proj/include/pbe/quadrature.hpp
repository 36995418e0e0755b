#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <functional>

namespace pbe {

// Adaptive Gauss-Kronrod on a finite interval.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, 15, rel_tol);
}

}  // namespace pbe
