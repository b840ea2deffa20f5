// Acceptance checks: one line per criterion, nonzero exit if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <vector>

#include "matgeo/dislocation.hpp"
#include "matgeo/fdcheck.hpp"
#include "matgeo/geodesic.hpp"
#include "matgeo/geometry.hpp"
#include "matgeo/gravity.hpp"
#include "matgeo/lattice.hpp"
#include "matgeo/parser.hpp"
#include "test_util.hpp"

using namespace matgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;
int failures = 0;

void report(int n, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d %-34s %s  (%s)\n", n, name,
              pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double now_seconds() {
  using clk = std::chrono::steady_clock;
  static const clk::time_point t0 = clk::now();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

// --- 1: derivative data vs finite-difference oracle -----------------------

void criterion1() {
  const double t0 = now_seconds();
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ScalarField2 f = parse_field(testutil::random_sum(rng, 3, 2));
    for (int k = 0; k < 3; ++k) {
      const Point2 p{U(rng), U(rng)};
      const Jet a = f.eval(p);
      const Jet b = fd_jet(f, p, 0.02);
      const double da[10] = {a.v,   a.d1,   a.d2,   a.d11,  a.d12,
                             a.d22, a.d111, a.d112, a.d122, a.d222};
      const double db[10] = {b.v,   b.d1,   b.d2,   b.d11,  b.d12,
                             b.d22, b.d111, b.d112, b.d122, b.d222};
      for (int i = 0; i < 10; ++i)
        worst = std::max(worst, std::fabs(da[i] - db[i]));
    }
  }
  const double dt = now_seconds() - t0;
  report(1, "derivatives vs fd oracle", worst <= 1e-4 && dt < 10.0,
         fmt("max dev %.2e, %.1f s", worst, dt));
}

// --- 2: curvature oracles ---------------------------------------------------

void criterion2() {
  const Metric2 sph = Metric2::conformal(parse_field("0 - ln(1 + x^2 + y^2)"));
  const Metric2 hyp = Metric2::conformal(parse_field("0 - ln(y)"));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  std::uniform_real_distribution<double> Uy(0.2, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    worst = std::max(worst,
                     std::fabs(gauss_curvature(sph, {U(rng), U(rng)}) - 4.0));
    worst = std::max(worst,
                     std::fabs(gauss_curvature(hyp, {U(rng), Uy(rng)}) + 1.0));
  }
  report(2, "curvature oracles", worst <= 1e-8, fmt("max dev %.2e", worst));
}

// --- 3: curvature-decomposition and commutator identities -------------------

void criterion3() {
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  const ScalarField2 f = parse_field("sin(x)*exp(0.3*y) + x^2*y");
  const VectorField2 u{parse_field("x^2 + y + 1"),
                       parse_field("cos(x*y) + 0.5*x")};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
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
    for (int k = 0; k < 50; ++k) {
      const Point2 p{U(rng), U(rng)};
      worst = std::max(worst, curvature_decomposition_defect(conn, p));
      worst = std::max(worst, commutator_scalar_defect(conn, f, p));
      worst = std::max(worst, commutator_vector_defect(conn, u, p));
    }
  }
  report(3, "curvature/commutator identities", worst <= 1e-8,
         fmt("max dev %.2e", worst));
}

// --- 4: flat gradient pair and its perturbation -----------------------------

void criterion4() {
  const Metric2 a = Metric2::conformal(parse_field("0 - ln(1 + x^2 + y^2)"));
  const ScalarField2 lnf = parse_field("ln(1 + x^2 + y^2)");
  const VectorField2 t{deriv(lnf, 1), deriv(lnf, 2)};
  auto max_curv = [&a](const VectorField2& tc, const Point2& p) {
    const CurvatureData r = curvature_of(Connection2::vectorial(a, tc), p);
    double mx = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          for (int k = 0; k < 2; ++k)
            mx = std::max(mx, std::fabs(r.R[i][j][l][k].v));
    return mx;
  };
  double curv = 0.0, pot = 0.0;
  for (double x = -1.0; x <= 1.01; x += 0.2)
    for (double y = -1.0; y <= 1.01; y += 0.2) {
      curv = std::max(curv, max_curv(t, {x, y}));
      pot = std::max(pot, flatness_defect(a, t, {x, y}));
    }
  const double broken =
      max_curv(VectorField2{t.c1 * 1.1, t.c2 * 1.1}, {0.3, -0.2});
  report(4, "gradient-pair flatness", curv <= 1e-7 && pot <= 1e-8 &&
                                          broken >= 1e-2,
         fmt("curv %.2e, K-div %.2e, perturbed %.2f", curv, pot, broken));
}

// --- 5: potential construction convergence ----------------------------------

void criterion5() {
  const Metric2 a = Metric2::conformal(parse_field("0 - ln(1 + x^2 + y^2)"));
  const ScalarField2 exact = parse_field("ln(1 + x^2 + y^2)");
  const ScalarField2 source = ScalarField2::constant(4.0);
  auto solve_err = [&](int n) {
    const RectGrid g{-0.8, 0.8, -0.8, 0.8, n, n};
    const PoissonResult res = solve_laplace_beltrami(a, g, source, exact);
    double err = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        err = std::max(err,
                       std::fabs(res.at(i, j) - exact.value(g.node(i, j))));
    return err;
  };
  const double e1 = solve_err(33), e2 = solve_err(65), e3 = solve_err(129);
  const double h1 = 1.6 / 32, h2 = 1.6 / 64, h3 = 1.6 / 128;
  const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
  const double t0 = now_seconds();
  const double e4 = solve_err(257);
  const double dt = now_seconds() - t0;
  const double h4 = 1.6 / 256;
  const double p3 = std::log2(e3 / e4);
  const bool ok = e1 <= 5 * h1 * h1 && e2 <= 5 * h2 * h2 &&
                  e3 <= 5 * h3 * h3 && e4 <= 5 * h4 * h4 &&
                  std::fabs(p1 - 2.0) <= 0.2 && std::fabs(p2 - 2.0) <= 0.2 &&
                  std::fabs(p3 - 2.0) <= 0.2 && dt < 60.0;
  report(5, "potential construction", ok,
         fmt("orders %.2f/%.2f/%.2f", p1, p2, p3) + fmt(", 257^2 in %.1f s", dt));
}

// --- 6: half-plane parallel covector ----------------------------------------

void criterion6() {
  const Metric2 a = Metric2::conformal(parse_field("0 - ln(y)"));
  const VectorField2 t{parse_field("0"), parse_field("1/y")};
  const Connection2 conn = Connection2::vectorial(a, t);
  double worst = 0.0, par = 0.0;
  for (double x = -1.0; x <= 1.01; x += 0.25)
    for (double y = 0.3; y <= 2.51; y += 0.2) {
      const Point2 p{x, y};
      const MetricJets m = a.eval(p);
      const Jet tc[2] = {t.c1.eval(p), t.c2.eval(p)};
      double norm2 = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          norm2 += m.inv[i][j].v * tc[i].v * tc[j].v;
      worst = std::max(worst, std::fabs(gauss_curvature(a, p) + norm2));
      worst = std::max(worst, std::fabs(norm2 - 1.0));
      const auto nt = covariant_deriv_covector(conn, t, p);
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be)
          par = std::max(par, std::fabs(nt[al][be].v));
    }
  report(6, "half-plane parallel covector", worst <= 1e-8 && par <= 1e-10,
         fmt("K+|t|^2 %.2e, |grad t| %.2e", worst, par));
}

// --- 7: canonical transformations -------------------------------------------

void criterion7() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  double d_full = 0.0, d_scal = 0.0, d_tor = 0.0;
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
              d_full = std::max(d_full, std::fabs(r0.R[i][j][l][n].v -
                                                  r1.R[i][j][l][n].v));
          d_full = std::max(d_full, std::fabs(r0.ricci[i][j].v -
                                              r1.ricci[i][j].v));
        }
      const double s0 = scalar_curvature(conn, a, p).v;
      const double s1 = scalar_curvature(cp.connection, cp.metric, p).v;
      d_scal = std::max(d_scal,
                        std::fabs(s1 - std::exp(2.0 * sigma.value(p)) * s0));
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
            d_tor = std::max(d_tor, std::fabs(traceless(t0, A, B, K) -
                                              traceless(t1, A, B, K)));
    }
  }
  report(7, "canonical transformations",
         d_full <= 1e-9 && d_scal <= 1e-9 && d_tor <= 1e-9,
         fmt("curv %.1e, scalar %.1e, torsion %.1e", d_full, d_scal, d_tor));
}

// --- 8: constant-torsion solution -------------------------------------------

void criterion8() {
  const Couplings c(1.0, 1.0, 4.0);
  const ConformalGaugeState st = class1_build(ClassISolution{
      BranchSign::Plus, 1.0, 1.0, cplx(0.0), HolomorphicField::identity(), c});
  double el = 0.0, dr = 0.0;
  for (int j = 0; j < 41; ++j)
    for (int i = 0; i < 41; ++i) {
      const Point2 p{-2.0 + 0.1 * i, -2.0 + 0.1 * j};
      el = std::max(el, el_residual(st, p).sup());
      dr = std::max(dr, std::fabs(std::fabs(st.curvature_scalar(p).v) - 4.0));
    }
  const ActionReport ar = action_eval_plane(st, 10.0);
  const bool ok = el <= 1e-8 && dr <= 1e-8 &&
                  std::fabs(ar.gauss_bonnet - 4.0 * kPi) <= 0.01 * 4.0 * kPi &&
                  std::fabs(ar.area - kPi) <= 0.01 * kPi;
  report(8, "constant-torsion solution", ok,
         fmt("el %.1e, area %.6f, ", el, ar.area) +
             fmt("GB %.6f, chi %.4f/%.4f", ar.gauss_bonnet, ar.chi_disk,
                 ar.chi_sphere));
}

// --- 9: potential-torsion solution ------------------------------------------

void criterion9() {
  const Couplings c(1.0, 1.0, 0.5);
  const ClassIISolution sol(c, 0.0, 1.0, HolomorphicField::identity(), -4.2,
                            4.2);
  double knot = 0.0;
  for (const double xi : sol.knots())
    knot = std::max(knot, sol.ode_residual(xi));
  const ConformalGaugeState st = sol.state();
  double el = 0.0, ident = 0.0, rel148 = 0.0;
  for (int j = 0; j < 13; ++j)
    for (int i = 0; i < 13; ++i) {
      const Point2 p{-1.5 + 0.25 * i, -1.5 + 0.25 * j};
      el = std::max(el, el_residual(st, p).sup());
      const double xi = 2.0 * p.x;
      const double h = sol.h(xi), hp = sol.h_derivs(xi)[1];
      ident = std::max(ident, std::fabs(st.curvature_scalar(p).v + h));
      ident = std::max(ident, std::fabs(st.torsion_sq_reported(p) -
                                        4.0 * hp * std::exp(-h)));
      rel148 = std::max(rel148, metric_from_torsion_check(sol, st, p));
    }
  const bool ok = knot <= 1e-10 && el <= 1e-6 && ident <= 1e-6 &&
                  rel148 <= 1e-8;
  report(9, "potential-torsion solution", ok,
         fmt("ode %.1e, el %.1e, ", knot, el) +
             fmt("identities %.1e, metric-from-torsion %.1e", ident, rel148));
}

// --- 10: geodesics ------------------------------------------------------------

void criterion10() {
  const ScalarField2 phi = parse_field("ln(1 + x^2 + y^2)");
  const Metric2 a = Metric2::conformal(-phi);
  const Connection2 lc = Connection2::levi_civita(a);
  const GeodesicState init{0.0, {0.1, -0.2}, {0.3, 0.4}};
  const GeodesicTrace tr = integrate_geodesic(lc, init, 10000, 1e-4);
  const ConformalTrace ct =
      conformal_geodesic(phi, cplx(0.1, -0.2), cplx(0.3, 0.4), 10000, 1e-4);
  double fdrift = 0.0, agree = 0.0;
  for (const double f : ct.first_integral)
    fdrift = std::max(fdrift, std::fabs(f - ct.first_integral[0]));
  for (std::size_t i = 0; i < tr.samples.size(); ++i)
    agree = std::max(agree, std::hypot(
                                tr.samples[i].pos.x - ct.trace.samples[i].pos.x,
                                tr.samples[i].pos.y - ct.trace.samples[i].pos.y));
  const GeodesicTrace ref = integrate_geodesic(lc, init, 10000, 1e-4);
  auto end_error = [&](const GeodesicTrace& t) {
    return std::hypot(t.samples.back().pos.x - ref.samples.back().pos.x,
                      t.samples.back().pos.y - ref.samples.back().pos.y);
  };
  const double ratio = end_error(integrate_geodesic(lc, init, 100, 1e-2)) /
                       end_error(integrate_geodesic(lc, init, 200, 5e-3));
  const bool ok = fdrift <= 1e-6 && agree <= 1e-6 && ratio >= 16.0 * 0.7 &&
                  ratio <= 16.0 * 1.3;
  report(10, "geodesics", ok,
         fmt("drift %.1e, agree %.1e, ratio %.2f", fdrift, agree, ratio));
}

// --- 11: lattice ---------------------------------------------------------------

void criterion11() {
  const LatticeModel lat;
  const double b01 = burgers(lat, 0, 1).strength;
  char rounded[16];
  std::snprintf(rounded, sizeof rounded, "%.2f", b01);
  const SWCounts sw = stone_wales_counts(6, 6, 6, 6);
  bool invariant = sw.v == 16 && sw.c == 19;
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> P(4, 12);
  for (int k = 0; k < 1000 && invariant; ++k) {
    const long p = P(rng), q = P(rng), r = P(rng), s = P(rng);
    const SWCounts b = stone_wales_counts(p, q, r, s);
    const SWCounts aft = stone_wales_counts(p - 1, q + 1, r - 1, s + 1);
    invariant = b.v == aft.v && b.c == aft.c;
  }
  const bool ok = std::string(rounded) == "2.46" &&
                  std::fabs(b01 - std::sqrt(3.0) * 1.42) <= 1e-12 && invariant;
  report(11, "lattice", ok, fmt("b(0,1) = %.10f, counts 16/19", b01));
}

// --- 12: volume compatibility ---------------------------------------------------

void criterion12() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  int votes_first = 0, votes_second = 0;
  double best_worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Metric2 a =
        Metric2::conformal(parse_field(testutil::random_sum(rng, 2, 1)));
    const ScalarField2 f =
        parse_field(testutil::random_sum(rng, 2, 1) + " + x + 0.37*y");
    const VectorField2 t{deriv(f, 1), deriv(f, 2)};
    const Connection2 conn = Connection2::vectorial(a, t);
    std::vector<Point2> pts;
    for (int k = 0; k < 8; ++k) pts.push_back({U(rng), U(rng)});
    const VolumeCompatibility vc = volume_compatibility(conn, a, f, pts);
    best_worst = std::max(best_worst, std::min(vc.residual_first_slot,
                                               vc.residual_second_slot));
    if (vc.residual_first_slot < vc.residual_second_slot)
      ++votes_first;
    else
      ++votes_second;
  }
  const bool ok = best_worst <= 1e-9 &&
                  std::min(votes_first, votes_second) == 0;
  report(12, "volume compatibility", ok,
         fmt("residual %.1e, votes %g/%g", best_worst,
             double(votes_first), double(votes_second)));
}

}  // namespace

int main() {
  now_seconds();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  if (failures == 0)
    std::printf("all 12 criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
