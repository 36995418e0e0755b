#include "pbe/serialize.hpp"

#include <cstdio>

namespace pbe {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

json to_json(const ExpPoly& f) {
  json terms = json::array();
  for (const auto& t : f.terms())
    terms.push_back({t.coeff, t.power.numerator(), t.power.denominator(), t.rate.numerator(),
                     t.rate.denominator()});
  return terms;
}

json to_json(const TimeField& f) {
  json coeffs = json::array();
  for (const auto& [k, poly] : f.coeffs()) coeffs.push_back({k, to_json(poly)});
  return coeffs;
}

json to_json(const SeriesSolution& sol) {
  json iterates = json::array();
  for (const auto& mu : sol.iterates) iterates.push_back(to_json(mu));
  return json{{"h", sol.h},
              {"mode", mode_name(sol.mode)},
              {"order", sol.order()},
              {"iterates", iterates}};
}

json to_json(const OptimizeResult& r) {
  json candidates = json::array();
  for (const auto& c : r.candidates)
    candidates.push_back({{"h", c.h}, {"E", c.failed ? json() : json(c.e)}});
  return json{{"bracket", {r.bracket_lo, r.bracket_hi}},
              {"grid", {{"resolution", r.grid_resolution}, {"s_max", r.grid_s_max},
                        {"t_max", r.grid_t_max}}},
              {"terms", r.K_terms},
              {"candidates", candidates},
              {"refine_evaluations", r.refine_evaluations},
              {"h_star", r.h_star},
              {"E_star", r.e_star},
              {"outside_safe_region", r.outside_safe_region}};
}

json to_json(const BoundReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"k", row.k}, {"measured", row.measured}, {"bound", row.bound},
                    {"holds", row.holds}});
  return json{{"gamma", r.gamma},
              {"theta", r.theta_h},
              {"norm_mu1", r.norm_mu1},
              {"preconditions_ok", r.preconditions_ok},
              {"rows", rows}};
}

ExpPoly expoly_from_json(const json& j) {
  std::vector<ExpPolyTerm> terms;
  for (const auto& t : j)
    terms.push_back({t.at(0).get<double>(),
                     Rational(t.at(1).get<std::int64_t>(), t.at(2).get<std::int64_t>()),
                     Rational(t.at(3).get<std::int64_t>(), t.at(4).get<std::int64_t>())});
  return ExpPoly(std::move(terms));
}

TimeField timefield_from_json(const json& j) {
  std::vector<std::pair<int, ExpPoly>> coeffs;
  for (const auto& c : j) coeffs.emplace_back(c.at(0).get<int>(), expoly_from_json(c.at(1)));
  return TimeField(std::move(coeffs));
}

SeriesSolution series_from_json(const json& j) {
  SeriesSolution sol;
  sol.h = j.at("h").get<double>();
  sol.mode = parse_mode(j.at("mode").get<std::string>());
  for (const auto& mu : j.at("iterates")) sol.iterates.push_back(timefield_from_json(mu));
  return sol;
}

std::string to_csv(const CellSolution& cells) {
  std::string out;
  out += "# time=" + format_double(cells.time) + " cells=" + std::to_string(cells.grid.cells()) +
         " mass_leak=" + format_double(cells.mass_leak) +
         " dt=" + format_double(cells.dt_used) + "\n";
  out += "s,density\n";
  for (int i = 0; i < cells.grid.cells(); ++i)
    out += format_double(cells.grid.centers[i]) + "," + format_double(cells.values[i]) + "\n";
  return out;
}

}  // namespace pbe
