#include "pbe/examples.hpp"

#include <stdexcept>

namespace pbe {

namespace {

ExpPoly exponential_ic() { return ExpPoly::term(1.0, ratio(0), ratio(1)); }

// Gamma-type initial condition 4 s e^{-2s} (unit count and unit mass).
ExpPoly gamma_ic() { return ExpPoly::term(4.0, ratio(1), ratio(2)); }

std::vector<ExampleCase> build_cases() {
  std::vector<ExampleCase> cases;

  cases.push_back({"4.1",
                   "constant kernel, exponential initial condition",
                   {exponential_ic(), {constant_kernel(), std::nullopt}, 3.0, "constant/exp"},
                   ExactId::constant_exp,
                   false});

  cases.push_back({"4.2",
                   "sum kernel, exponential initial condition",
                   {exponential_ic(), {sum_kernel(), std::nullopt}, 2.0, "sum/exp"},
                   ExactId::sum_exp,
                   false});

  cases.push_back({"4.3",
                   "product kernel, exponential initial condition (pre-gelation)",
                   {exponential_ic(), {product_kernel(), std::nullopt}, 1.0, "product/exp"},
                   ExactId::product_exp,
                   false});

  cases.push_back({"4.4",
                   "sum kernel, gamma initial condition",
                   {gamma_ic(), {sum_kernel(), std::nullopt}, 1.0, "sum/gamma"},
                   std::nullopt,
                   false});

  cases.push_back({"4.5",
                   "Brownian free-molecular kernel, gamma initial condition",
                   {gamma_ic(), {brownian_kernel(), std::nullopt}, 0.5, "brownian/gamma"},
                   std::nullopt,
                   false});

  cases.push_back({"4.6",
                   "constant kernel with binary breakage, S(s) = s/2",
                   {gamma_ic(),
                    {constant_kernel(), BreakageSpec(2.0, 1, 0.5, 1)},
                    2.0,
                    "cabe/slow-selection"},
                   std::nullopt,
                   true});

  cases.push_back({"4.7",
                   "constant kernel with binary breakage, S(s) = 2s",
                   {ExpPoly::term(32.0, ratio(1), ratio(4)),
                    {constant_kernel(), BreakageSpec(2.0, 1, 2.0, 1)},
                    2.0,
                    "cabe/fast-selection"},
                   std::nullopt,
                   true});

  return cases;
}

}  // namespace

const std::vector<ExampleCase>& example_cases() {
  static const std::vector<ExampleCase> cases = build_cases();
  return cases;
}

const ExampleCase& example_case(const std::string& id) {
  for (const auto& c : example_cases())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown example id: " + id);
}

std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const auto& c : example_cases()) ids.push_back(c.id);
  return ids;
}

}  // namespace pbe
