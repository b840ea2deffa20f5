#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "matgeo/dislocation.hpp"
#include "matgeo/parser.hpp"

using namespace matgeo;

namespace {

// Manufactured case: a = (1 + r^2)^{-2} delta with exact potential
// phi* = ln(1 + r^2); the curved-Laplacian source is the constant 4.
double manufactured_error(int n) {
  const Metric2 a = Metric2::conformal(parse_field("0 - ln(1 + x^2 + y^2)"));
  const ScalarField2 exact = parse_field("ln(1 + x^2 + y^2)");
  const ScalarField2 source = ScalarField2::constant(4.0);
  const RectGrid g{-0.8, 0.8, -0.8, 0.8, n, n};
  const PoissonResult res = solve_laplace_beltrami(a, g, source, exact);
  double err = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      err = std::max(err, std::fabs(res.at(i, j) - exact.value(g.node(i, j))));
  return err;
}

}  // namespace

TEST_CASE("manufactured solution converges at second order") {
  const double e1 = manufactured_error(21);
  const double e2 = manufactured_error(41);
  const double e3 = manufactured_error(81);
  const double e4 = manufactured_error(161);
  const double h1 = 1.6 / 20, h2 = 1.6 / 40, h3 = 1.6 / 80, h4 = 1.6 / 160;
  CHECK(e1 <= 5.0 * h1 * h1);
  CHECK(e2 <= 5.0 * h2 * h2);
  CHECK(e3 <= 5.0 * h3 * h3);
  CHECK(e4 <= 5.0 * h4 * h4);
  const double p1 = std::log2(e1 / e2);
  const double p2 = std::log2(e2 / e3);
  const double p3 = std::log2(e3 / e4);
  CHECK(p1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(p2 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(p3 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("flat-potential construction reproduces the conformal exponent") {
  // For a = e^{2s} delta the exact solution of Delta_a u = K with boundary
  // trace -s is u = -s.
  const ScalarField2 s = parse_field("0 - ln(1 + x^2 + y^2)");
  const Metric2 a = Metric2::conformal(s);
  const RectGrid g{-0.8, 0.8, -0.8, 0.8, 41, 41};
  const PoissonResult res = solve_flat_potential(a, g, s * -1.0);
  double err = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      err = std::max(err, std::fabs(res.at(i, j) + s.value(g.node(i, j))));
  const double h = g.hx();
  CHECK(err <= 5.0 * h * h);
  CHECK(res.residual <= 1e-9);
}

TEST_CASE("harmonic case with zero data stays identically zero") {
  const RectGrid g{0, 1, 0, 1, 17, 17};
  const PoissonResult res = solve_flat_potential(
      Metric2::euclidean(), g, ScalarField2::constant(0.0));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(std::fabs(res.at(i, j)) <= 1e-12);
}
