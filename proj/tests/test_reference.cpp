#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pbe/analytic.hpp"
#include "pbe/examples.hpp"
#include "pbe/fvm.hpp"
#include "pbe/quadrature.hpp"

using namespace pbe;

// ---------------------------------------------------------------------------
// special functions and closed-form densities
// ---------------------------------------------------------------------------

TEST_CASE("bessel_i1 against the standard library implementation") {
  CHECK(bessel_i1(0.0) == 0.0);
  CHECK(bessel_i1(1.0) == doctest::Approx(0.5651591).epsilon(1e-6));
  CHECK(bessel_i1(2.0) == doctest::Approx(1.5906369).epsilon(1e-6));
  for (double x : {0.1, 0.5, 3.0, 10.0, 25.0, 50.0, 320.0})
    CHECK(bessel_i1(x) == doctest::Approx(std::cyl_bessel_i(1.0, x)).epsilon(1e-8));
  CHECK_THROWS_AS(bessel_i1(-1.0), std::domain_error);
}

TEST_CASE("exact_constant: table values and initial condition") {
  CHECK(exact_constant(5.0, 0.5) == doctest::Approx(1.1722e-2).epsilon(5e-5));
  CHECK(exact_constant(0.0, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  for (double s : {0.0, 0.5, 3.0, 9.0})
    CHECK(exact_constant(s, 0.0) == doctest::Approx(std::exp(-s)).epsilon(1e-14));
}

TEST_CASE("exact_sum: initial condition limit and independent cross-check") {
  for (double s : {0.2, 1.0, 4.0})
    CHECK(exact_sum(s, 1e-13) == doctest::Approx(std::exp(-s)).epsilon(1e-6));
  // removable singularity at s = 0
  CHECK(exact_sum(0.0, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-12));

  auto independent = [](double s, double tau) {
    const double t = std::sqrt(1.0 - std::exp(-tau));
    return std::exp((std::exp(-tau) - 2.0) * s - tau) * std::cyl_bessel_i(1.0, 2.0 * t * s) /
           (t * s);
  };
  for (double s : {0.5, 1.0, 2.5, 8.0})
    for (double tau : {0.3, 1.0, 2.0})
      CHECK(exact_sum(s, tau) == doctest::Approx(independent(s, tau)).epsilon(1e-12));
}

TEST_CASE("exact_sum conserves mass") {
  for (double tau : {0.5, 1.0, 2.0})
    CHECK(exact_moment(ExactId::sum_exp, 1, tau) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exact_product: series behaviour") {
  for (double s : {0.0, 1.0, 5.0})
    CHECK(exact_product(s, 0.0) == doctest::Approx(std::exp(-s)).epsilon(1e-14));
  CHECK(exact_product(0.0, 0.8) == doctest::Approx(1.0).epsilon(1e-14));

  // brute-force 50-term oracle
  auto oracle = [](double s, double tau) {
    double sum = 0.0;
    for (int k = 0; k < 50; ++k)
      sum += std::pow(tau, k) * std::pow(s, 3 * k) /
             (std::tgamma(k + 2.0) * std::tgamma(2.0 * k + 2.0));
    return std::exp(-(1.0 + tau) * s) * sum;
  };
  for (double s : {0.5, 1.0, 3.0})
    for (double tau : {0.25, 0.5, 1.0})
      CHECK(exact_product(s, tau) == doctest::Approx(oracle(s, tau)).epsilon(1e-13));
  CHECK_THROWS_AS(exact_product(1.0, 1.5), std::domain_error);
}

TEST_CASE("exact moments: closed forms and known count laws") {
  CHECK(exact_moment(ExactId::constant_exp, 0, 0.0) == doctest::Approx(1.0));
  CHECK(exact_moment(ExactId::constant_exp, 0, 2.0) == doctest::Approx(0.5));
  for (double tau : {0.0, 1.0, 3.0})
    CHECK(exact_moment(ExactId::constant_exp, 1, tau) == doctest::Approx(1.0));
  // sum kernel: n0 = e^{-tau}; product kernel: n0 = 1 - tau/2 and n1 = 1,
  // both valid before this initial condition gels at tau = 1/2
  for (double tau : {0.3, 1.0, 2.0})
    CHECK(exact_moment(ExactId::sum_exp, 0, tau) ==
          doctest::Approx(std::exp(-tau)).epsilon(1e-7));
  for (double tau : {0.2, 0.4}) {
    CHECK(exact_moment(ExactId::product_exp, 0, tau) ==
          doctest::Approx(1.0 - 0.5 * tau).epsilon(1e-7));
    CHECK(exact_moment(ExactId::product_exp, 1, tau) == doctest::Approx(1.0).epsilon(1e-7));
  }
}

// Numeric residual of a density under the governing operator, all integrals
// by quadrature.  Exact solutions must annihilate it.
namespace {

double numeric_residual(const SeparableKernel& w, const std::function<double(double, double)>& c,
                        double s, double tau, double s_cut) {
  const double dtau = 1e-5;
  const double dc_dt = (c(s, tau + dtau) - c(s, tau - dtau)) / (2.0 * dtau);
  const double gain =
      s == 0.0 ? 0.0
               : 0.5 * integrate([&](double xi) { return w(s - xi, xi) * c(s - xi, tau) * c(xi, tau); },
                                 1e-12, s - 1e-12, 1e-11);
  auto loss_integrand = [&](double xi) { return w(s, xi) * c(xi, tau); };
  double loss_int = integrate(loss_integrand, 1e-12, std::min(100.0, s_cut), 1e-11);
  if (s_cut > 100.0) loss_int += integrate(loss_integrand, 100.0, s_cut, 1e-11);
  return dc_dt - gain + c(s, tau) * loss_int;
}

}  // namespace

TEST_CASE("exact densities annihilate the governing operator") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> s_dist(0.05, 10.0);

  SUBCASE("constant kernel") {
    std::uniform_real_distribution<double> t_dist(0.05, 3.0);
    for (int it = 0; it < 40; ++it) {
      const double s = s_dist(rng), tau = t_dist(rng);
      CAPTURE(s);
      CAPTURE(tau);
      CHECK(std::abs(numeric_residual(constant_kernel(), exact_constant, s, tau, 60.0)) <= 1e-7);
    }
  }
  SUBCASE("sum kernel") {
    std::uniform_real_distribution<double> t_dist(0.05, 0.4);
    for (int it = 0; it < 30; ++it) {
      const double s = s_dist(rng), tau = t_dist(rng);
      CAPTURE(s);
      CAPTURE(tau);
      CHECK(std::abs(numeric_residual(sum_kernel(), exact_sum, s, tau, 400.0)) <= 1e-7);
    }
  }
  SUBCASE("product kernel") {
    // the mass tail decays like e^{-((1+tau) - 3 (tau/4)^(1/3)) s}, which
    // collapses toward the tau = 1/2 gel point, so stay below it and cut deep
    std::uniform_real_distribution<double> t_dist(0.05, 0.3);
    for (int it = 0; it < 30; ++it) {
      const double s = s_dist(rng), tau = t_dist(rng);
      CAPTURE(s);
      CAPTURE(tau);
      CHECK(std::abs(numeric_residual(product_kernel(), exact_product, s, tau, 1200.0)) <= 1e-7);
    }
  }
}

// ---------------------------------------------------------------------------
// sectional reference solver
// ---------------------------------------------------------------------------

TEST_CASE("grid construction") {
  const SizeGrid u = SizeGrid::build(0.01, 10.01, 1000, SizeGrid::Kind::uniform);
  REQUIRE(u.cells() == 1000);
  for (int i = 0; i < 1000; i += 111) CHECK(u.width(i) == doctest::Approx(0.01).epsilon(1e-12));

  const SizeGrid g = SizeGrid::build(1e-3, 10.0, 100, SizeGrid::Kind::geometric);
  const double r = std::pow(1e4, 0.01);
  CHECK(g.edges[1] / g.edges[0] == doctest::Approx(r).epsilon(1e-12));
  CHECK(g.centers[5] == doctest::Approx(std::sqrt(g.edges[5] * g.edges[6])).epsilon(1e-14));

  CHECK_THROWS_AS(SizeGrid::build(1e-3, 10.0, 8, SizeGrid::Kind::uniform), std::invalid_argument);
  CHECK_THROWS_AS(SizeGrid::build(0.0, 10.0, 100, SizeGrid::Kind::uniform), std::invalid_argument);
  CHECK_THROWS_AS(SizeGrid::build(5.0, 1.0, 100, SizeGrid::Kind::uniform), std::invalid_argument);
}

namespace {

// Discrete mass carried by the initial sampling; the conservation statement
// is about the scheme, so it is measured against this, not the continuum
// integral.
double discrete_mass(const SizeGrid& grid, const std::function<double(double)>& c0) {
  double m = 0.0;
  for (int i = 0; i < grid.cells(); ++i)
    m += c0(grid.centers[i]) * grid.centers[i] * grid.width(i);
  return m;
}

}  // namespace

TEST_CASE("constant kernel run: accuracy, conservation, refinement") {
  auto c0 = [](double s) { return std::exp(-s); };
  const SizeGrid grid = SizeGrid::build(1e-3, 60.0, 400, SizeGrid::Kind::geometric);
  const CellSolution sol = fvm_solve(constant_kernel(), c0, grid, 2.0, 0.01);

  const double mass0 = discrete_mass(grid, c0);
  const double drift = std::abs(sol.moment(1) + sol.mass_leak - mass0) / mass0;
  CHECK(drift <= 1e-8);

  const double l1 = sol.l1_distance([&](double s) { return exact_constant(s, 2.0); });
  CHECK(l1 <= 1e-2);

  const SizeGrid coarse = SizeGrid::build(1e-3, 60.0, 200, SizeGrid::Kind::geometric);
  const CellSolution csol = fvm_solve(constant_kernel(), c0, coarse, 2.0, 0.01);
  const double l1c = csol.l1_distance([&](double s) { return exact_constant(s, 2.0); });
  CHECK(l1c / l1 >= 1.5);
}

TEST_CASE("sum kernel run against the exact density") {
  auto c0 = [](double s) { return std::exp(-s); };
  const SizeGrid grid = SizeGrid::build(1e-3, 60.0, 400, SizeGrid::Kind::geometric);
  const CellSolution sol = fvm_solve(sum_kernel(), c0, grid, 1.0, 0.01);
  CHECK(sol.l1_distance([&](double s) { return exact_sum(s, 1.0); }) <= 2e-2);
}

TEST_CASE("coupled run keeps count and mass steady") {
  const auto& ex = example_case("4.6");
  auto c0 = [&](double s) { return ex.problem.c0(s); };
  const SizeGrid grid = SizeGrid::build(1e-4, 40.0, 600, SizeGrid::Kind::geometric);
  const CellSolution sol = fvm_solve(ex.problem.split.kernel, ex.problem.split.breakage, c0,
                                     grid, 1.0, 5e-3);
  // steady-state configuration: n0 stays near 1, discrete mass is conserved
  CHECK(sol.moment(0) == doctest::Approx(1.0).epsilon(2e-3));
  const double mass0 = discrete_mass(grid, c0);
  CHECK(sol.moment(1) + sol.mass_leak == doctest::Approx(mass0).epsilon(1e-9));
}

TEST_CASE("snapshots are strictly ordered and cumulative") {
  auto c0 = [](double s) { return std::exp(-s); };
  const SizeGrid grid = SizeGrid::build(1e-3, 60.0, 64, SizeGrid::Kind::geometric);
  const double times[] = {0.5, 1.0, 2.0};
  const auto snaps = fvm_solve_snapshots(constant_kernel(), std::nullopt, c0, grid, times, 0.01);
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[0].time == 0.5);
  CHECK(snaps[2].time == 2.0);
  // single run to 2.0 must agree with the snapshot run bit-for-bit in policy
  const CellSolution direct = fvm_solve(constant_kernel(), c0, grid, 2.0, 0.01);
  CHECK(snaps[2].moment(0) == doctest::Approx(direct.moment(0)).epsilon(1e-6));

  const double bad[] = {1.0, 0.5};
  CHECK_THROWS_AS(fvm_solve_snapshots(constant_kernel(), std::nullopt, c0, grid, bad, 0.01),
                  std::invalid_argument);
}
