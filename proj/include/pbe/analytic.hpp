#pragma once

#include <string>

namespace pbe {

// Modified Bessel function of the first kind, order 1, by power series,
// summed until the next term falls below 1e-16 of the partial sum.
double bessel_i1(double x);

// Closed-form densities for the three classic aggregation benchmarks with
// c0 = exp(-s): constant kernel, sum kernel (via I1), product kernel
// (pre-gelation series, tau <= 1).
double exact_constant(double s, double tau);
double exact_sum(double s, double tau);
double exact_product(double s, double tau);

enum class ExactId { constant_exp, sum_exp, product_exp };

ExactId parse_exact_id(const std::string& name);
double exact_density(ExactId id, double s, double tau);

// j-th moment of the exact density.  Constant kernel uses the closed forms
// n0 = 2/(tau+2), n1 = 1, n2 = tau+2; the others fall back to adaptive
// quadrature with the domain cut where the exponential tail is below 1e-10.
double exact_moment(ExactId id, int j, double tau);

}  // namespace pbe
