#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "matgeo/geometry.hpp"
#include "matgeo/parser.hpp"
#include "test_util.hpp"

using namespace matgeo;

namespace {

// Connection with generic torsion and nonmetricity: Levi-Civita of a random
// conformal metric plus a random difference tensor.
struct RandomGeometry {
  Metric2 a;
  Connection2 conn;
};

RandomGeometry random_geometry(std::mt19937& rng) {
  const Metric2 a =
      Metric2::conformal(parse_field(testutil::random_sum(rng, 2, 1)));
  const Connection2 lc = Connection2::levi_civita(a);
  auto comp = std::make_shared<std::array<ScalarField2, 8>>();
  for (int i = 0; i < 8; ++i)
    (*comp)[i] = parse_field(testutil::random_sum(rng, 2, 1));
  const Connection2 conn =
      Connection2::from_function([lc, comp](const Point2& q) {
        ConnJets g = lc.eval(q);
        int idx = 0;
        for (int k = 0; k < 2; ++k)
          for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be)
              g.G[k][al][be] = g.G[k][al][be] + (*comp)[idx++].eval(q);
        return g;
      });
  return {a, conn};
}

}  // namespace

TEST_CASE("curvature oracles: round sphere and hyperbolic half-plane") {
  const Metric2 sph = Metric2::conformal(parse_field("0 - ln(1 + x^2 + y^2)"));
  const Metric2 hyp = Metric2::conformal(parse_field("0 - ln(y)"));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  std::uniform_real_distribution<double> Uy(0.2, 3.0);
  for (int k = 0; k < 100; ++k) {
    CHECK(gauss_curvature(sph, {U(rng), U(rng)}) == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(gauss_curvature(hyp, {U(rng), Uy(rng)}) ==
          doctest::Approx(-1.0).epsilon(1e-8));
  }
  // Unit-curvature sphere in stereographic coordinates.
  const Metric2 unit = Metric2::conformal(parse_field("ln(2/(1 + x^2 + y^2))"));
  CHECK(gauss_curvature(unit, {0.3, -0.2}) == doctest::Approx(1.0));
  CHECK(gauss_curvature(Metric2::euclidean(), {0.4, 0.7}) ==
        doctest::Approx(0.0));
}

TEST_CASE("curvature decomposition and commutator identities hold for random "
          "connections") {
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  const ScalarField2 f = parse_field("sin(x)*exp(0.3*y) + x^2*y");
  const VectorField2 u{parse_field("x^2 + y + 1"),
                       parse_field("cos(x*y) + 0.5*x")};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const RandomGeometry geo = random_geometry(rng);
    for (int k = 0; k < 50; ++k) {
      const Point2 p{U(rng), U(rng)};
      worst = std::max(worst, curvature_decomposition_defect(geo.conn, p));
      worst = std::max(worst, commutator_scalar_defect(geo.conn, f, p));
      worst = std::max(worst, commutator_vector_defect(geo.conn, u, p));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("curvature structure invariants") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomGeometry geo = random_geometry(rng);
    for (int k = 0; k < 10; ++k) {
      const Point2 p{U(rng), U(rng)};
      const CurvatureData r = curvature_of(geo.conn, p);
      // Antisymmetry in the first index pair.
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            for (int n = 0; n < 2; ++n)
              CHECK(std::fabs(r.R[i][j][l][n].v + r.R[j][i][l][n].v) <= 1e-10);
      // Antisymmetric Ricci part equals minus the last-slot trace.
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
          double tr = 0.0;
          for (int l = 0; l < 2; ++l) tr += r.R[al][be][l][l].v;
          CHECK(std::fabs(r.ricci[al][be].v - r.ricci[be][al].v + tr) <=
                1e-10);
        }
      // The distortion decomposition reconstructs the connection.
      CHECK(distortion_roundtrip_defect(geo.conn, geo.a, p) <= 1e-10);
    }
  }
  // Levi-Civita Ricci is symmetric.
  const Metric2 a = Metric2::conformal(parse_field("0.4*sin(x*y) + 0.2*x"));
  const CurvatureData r = curvature_of(Connection2::levi_civita(a), {0.3, 0.6});
  CHECK(std::fabs(r.ricci[0][1].v - r.ricci[1][0].v) <= 1e-9);
}

TEST_CASE("canonical transformations preserve curvature and rescale the "
          "scalar") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const Metric2 a =
        Metric2::conformal(parse_field(testutil::random_sum(rng, 2, 1)));
    const ScalarField2 f = parse_field(testutil::random_sum(rng, 2, 1));
    const VectorField2 t{deriv(f, 1), deriv(f, 2)};
    const Connection2 conn = Connection2::vectorial(a, t);
    const ScalarField2 sigma = parse_field(testutil::random_sum(rng, 2, 1));
    std::vector<Point2> pts;
    for (int k = 0; k < 6; ++k) pts.push_back({U(rng), U(rng)});
    const CanonicalPair cp = canonical_transform(a, conn, sigma, pts);
    for (const Point2& p : pts) {
      const CurvatureData r0 = curvature_of(conn, p);
      const CurvatureData r1 = curvature_of(cp.connection, p);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          for (int l = 0; l < 2; ++l)
            for (int n = 0; n < 2; ++n)
              CHECK(std::fabs(r0.R[i][j][l][n].v - r1.R[i][j][l][n].v) <=
                    1e-9);
          CHECK(std::fabs(r0.ricci[i][j].v - r1.ricci[i][j].v) <= 1e-9);
        }
      const double s0 = scalar_curvature(conn, a, p).v;
      const double s1 = scalar_curvature(cp.connection, cp.metric, p).v;
      CHECK(std::fabs(s1 - std::exp(2.0 * sigma.value(p)) * s0) <= 1e-9);
      // Traceless torsion part is unchanged (identically, in two dimensions).
      const TorsionData t0 = torsion_of(conn, p);
      const TorsionData t1 = torsion_of(cp.connection, p);
      auto traceless = [](const TorsionData& td, int A, int B, int K) {
        double v = td.T[A][B][K].v;
        if (K == B) v -= td.trace_tk[A].v;
        if (K == A) v += td.trace_tk[B].v;
        return v;
      };
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
          for (int K = 0; K < 2; ++K)
            CHECK(std::fabs(traceless(t0, A, B, K) - traceless(t1, A, B, K)) <=
                  1e-9);
    }
  }
}

TEST_CASE("volume compatibility singles out one uniform convention") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  int votes_first = 0, votes_second = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Metric2 a =
        Metric2::conformal(parse_field(testutil::random_sum(rng, 2, 1)));
    // A linear term keeps the gradient bounded away from zero so the losing
    // convention is visibly off.
    const ScalarField2 f =
        parse_field(testutil::random_sum(rng, 2, 1) + " + x + 0.37*y");
    const VectorField2 t{deriv(f, 1), deriv(f, 2)};
    const Connection2 conn = Connection2::vectorial(a, t);
    std::vector<Point2> pts;
    for (int k = 0; k < 8; ++k) pts.push_back({U(rng), U(rng)});
    const VolumeCompatibility vc = volume_compatibility(conn, a, f, pts);
    const double best =
        std::min(vc.residual_first_slot, vc.residual_second_slot);
    CHECK(best <= 1e-9);
    // The losing convention is strictly off for generic data.
    CHECK(std::max(vc.residual_first_slot, vc.residual_second_slot) > 1e-4);
    if (vc.residual_first_slot < vc.residual_second_slot)
      ++votes_first;
    else
      ++votes_second;
  }
  // Exactly one convention wins, and it wins every time.
  CHECK(std::min(votes_first, votes_second) == 0);
  CHECK(std::max(votes_first, votes_second) == 20);
}

TEST_CASE("pentagon and holonomy defects match a discrete transport oracle") {
  std::mt19937 rng(3);
  const RandomGeometry geo = random_geometry(rng);
  const Point2 p{0.25, -0.35};
  const double h = 1e-3;
  const std::array<double, 2> v{0.7, -0.4};
  const std::array<double, 2> pred =
      holonomy_defect(geo.conn, {p.x + h / 2, p.y + h / 2}, v, h * h);
  const std::array<double, 2> loop =
      loop_transport_defect(geo.conn, p, v, h, 40);
  CHECK(std::fabs(pred[0] - loop[0]) <= 1e-6);
  CHECK(std::fabs(pred[1] - loop[1]) <= 1e-6);
  // Pentagon closure vanishes exactly for a symmetric connection.
  const Connection2 lc = Connection2::levi_civita(geo.a);
  const std::array<double, 2> pent = pentagon_closure(lc, p, 1.0, h * h);
  CHECK(std::fabs(pent[0]) <= 1e-14);
  CHECK(std::fabs(pent[1]) <= 1e-14);
}

TEST_CASE("divergence decomposition identity") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  const RandomGeometry geo = random_geometry(rng);
  const ScalarField2 psi = parse_field("0.3*x*y + 0.1*sin(x)");
  const VectorField2 w{parse_field("x + 0.2*y^2"), parse_field("cos(x) + y")};
  for (int k = 0; k < 20; ++k) {
    const Point2 p{U(rng), U(rng)};
    CHECK(divergence_identity_defect(geo.conn, geo.a, psi, w, p) <= 1e-10);
  }
  // Flat divergence of the position field is the dimension.
  CHECK(div_metric(Metric2::euclidean(),
                   VectorField2{parse_field("x"), parse_field("y")},
                   {0.4, -0.1}) == doctest::Approx(2.0));
}
