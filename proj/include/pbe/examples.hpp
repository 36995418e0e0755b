#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbe/aham.hpp"
#include "pbe/analytic.hpp"

namespace pbe {

// The seven built-in benchmark problems.  Five pure aggregation cases
// (constant, sum, product, gamma-seeded sum, Brownian) and two coupled
// aggregation-breakage cases with binary power-law breakage.
struct ExampleCase {
  std::string id;     // "4.1".."4.7"
  std::string title;
  ProblemSpec problem;
  std::optional<ExactId> exact;  // closed-form reference when one exists
  bool has_breakage = false;
};

const std::vector<ExampleCase>& example_cases();
const ExampleCase& example_case(const std::string& id);
std::vector<std::string> example_ids();

}  // namespace pbe
