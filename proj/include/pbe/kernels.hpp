#pragma once

#include <string>
#include <vector>

#include "pbe/rational.hpp"

namespace pbe {

// One separable piece lambda * s^alpha * xi^beta of an aggregation rate.
struct KernelTerm {
  double lambda = 0.0;
  Rational alpha{0};
  Rational beta{0};
};

// Aggregation rate w(s, xi) as a finite sum of separable monomial products.
// Construction enforces symmetry (w(s, xi) = w(xi, s) term-for-term) and a
// single homogeneity degree alpha + beta across terms.
class SeparableKernel {
 public:
  SeparableKernel() = default;
  explicit SeparableKernel(std::vector<KernelTerm> terms);

  const std::vector<KernelTerm>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  Rational homogeneity() const;

  double operator()(double s, double xi) const;

 private:
  std::vector<KernelTerm> terms_;
};

// The four rates used by the built-in problems.
SeparableKernel constant_kernel();
SeparableKernel sum_kernel();
SeparableKernel product_kernel();
// Free-molecular Brownian rate in separable form,
// b * (s^(1/3) + xi^(1/3))^2 * (sqrt(s) + sqrt(xi)) / sqrt(s * xi),
// expanded into six monomial products with correction factor b = 0.7071.
SeparableKernel brownian_kernel();

SeparableKernel builtin_kernel(const std::string& name);

// Power-law breakage pair: kernel beta(s, xi) = eta * s^(i-1) / xi^i and
// selection S(s) = sigma_s * s^j.  Mass normalization
// int_0^xi s * beta(s, xi) ds = xi forces eta = i + 1.
struct BreakageSpec {
  double eta = 2.0;
  int fragment_order = 1;  // i
  double sigma_s = 1.0;
  int selection_order = 1;  // j

  BreakageSpec(double eta_, int i_, double sigma_s_, int j_);
};

}  // namespace pbe
