#include "pbe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbe {

SeparableKernel::SeparableKernel(std::vector<KernelTerm> terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const KernelTerm& t) { return t.lambda == 0.0; });
  if (terms_.empty()) return;

  const Rational degree = terms_.front().alpha + terms_.front().beta;
  for (const auto& t : terms_)
    if (t.alpha + t.beta != degree)
      throw std::invalid_argument("kernel terms must share one homogeneity degree");

  // Every asymmetric term needs its mirror with the same weight.
  for (const auto& t : terms_) {
    if (t.alpha == t.beta) continue;
    const bool mirrored =
        std::any_of(terms_.begin(), terms_.end(), [&](const KernelTerm& u) {
          return u.alpha == t.beta && u.beta == t.alpha && u.lambda == t.lambda;
        });
    if (!mirrored)
      throw std::invalid_argument("kernel term list is not symmetric in (s, xi)");
  }
}

Rational SeparableKernel::homogeneity() const {
  if (terms_.empty()) return Rational(0);
  return terms_.front().alpha + terms_.front().beta;
}

double SeparableKernel::operator()(double s, double xi) const {
  if (!(s > 0.0) || !(xi > 0.0))
    throw std::domain_error("kernel evaluation requires s, xi > 0");
  double sum = 0.0;
  for (const auto& t : terms_)
    sum += t.lambda * std::pow(s, to_double(t.alpha)) * std::pow(xi, to_double(t.beta));
  return sum;
}

SeparableKernel constant_kernel() { return SeparableKernel({{1.0, ratio(0), ratio(0)}}); }

SeparableKernel sum_kernel() {
  return SeparableKernel({{1.0, ratio(1), ratio(0)}, {1.0, ratio(0), ratio(1)}});
}

SeparableKernel product_kernel() { return SeparableKernel({{1.0, ratio(1), ratio(1)}}); }

SeparableKernel brownian_kernel() {
  const double b = 0.7071;
  return SeparableKernel({
      {b, ratio(2, 3), ratio(-1, 2)},
      {b, ratio(-1, 2), ratio(2, 3)},
      {2.0 * b, ratio(1, 3), ratio(-1, 6)},
      {2.0 * b, ratio(-1, 6), ratio(1, 3)},
      {b, ratio(1, 6), ratio(0)},
      {b, ratio(0), ratio(1, 6)},
  });
}

SeparableKernel builtin_kernel(const std::string& name) {
  if (name == "constant") return constant_kernel();
  if (name == "sum") return sum_kernel();
  if (name == "product") return product_kernel();
  if (name == "brownian") return brownian_kernel();
  throw std::invalid_argument("unknown kernel name: " + name);
}

BreakageSpec::BreakageSpec(double eta_, int i_, double sigma_s_, int j_)
    : eta(eta_), fragment_order(i_), sigma_s(sigma_s_), selection_order(j_) {
  if (fragment_order < 1) throw std::invalid_argument("breakage fragment order must be >= 1");
  if (selection_order < 1) throw std::invalid_argument("selection order must be >= 1");
  if (!(sigma_s > 0.0)) throw std::invalid_argument("selection prefactor must be > 0");
  // int_0^xi s * beta(s, xi) ds = eta/(i+1) * xi, so conservation pins eta.
  if (std::abs(eta - (fragment_order + 1)) > 1e-12)
    throw std::invalid_argument("breakage kernel violates mass normalization: eta must equal i+1");
}

}  // namespace pbe
