// Command-line front end: identity suites, solution grids, geodesics,
// flatness reports, and lattice Burgers vectors.
//
// Config format: INI-style sections ([identities], [solve], ...) of
// key = value pairs; field expressions are written in the calculator grammar
// (optionally quoted).  Exit codes: 0 all checks pass, 1 check failure,
// 2 usage or config error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matgeo/dislocation.hpp"
#include "matgeo/geodesic.hpp"
#include "matgeo/geometry.hpp"
#include "matgeo/gravity.hpp"
#include "matgeo/grid.hpp"
#include "matgeo/lattice.hpp"
#include "matgeo/parser.hpp"

namespace {

using namespace matgeo;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Section = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, Section> parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, Section> out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("bad section header at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " +
                        std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
      val = val.substr(1, val.size() - 2);
    if (key.empty()) throw ConfigError("empty key at line " +
                                       std::to_string(lineno));
    out[section][key] = val;
  }
  return out;
}

std::string get_str(const Section& s, const std::string& key,
                    const std::string& def) {
  const auto it = s.find(key);
  return it == s.end() ? def : it->second;
}

double get_double(const Section& s, const std::string& key, double def) {
  const auto it = s.find(key);
  if (it == s.end()) return def;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for key '" + key + "'");
  }
}

int get_int(const Section& s, const std::string& key, int def) {
  const auto it = s.find(key);
  if (it == s.end()) return def;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for key '" + key + "'");
  }
}

ScalarField2 get_field(const Section& s, const std::string& key,
                       const std::string& def) {
  const std::string expr = get_str(s, key, def);
  try {
    return parse_field(expr);
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

RectGrid get_grid(const Section& s, double def_lo, double def_hi,
                  int def_n) {
  RectGrid g;
  g.x0 = get_double(s, "xmin", def_lo);
  g.x1 = get_double(s, "xmax", def_hi);
  g.y0 = get_double(s, "ymin", def_lo);
  g.y1 = get_double(s, "ymax", def_hi);
  g.nx = get_int(s, "nx", def_n);
  g.ny = get_int(s, "ny", def_n);
  if (g.nx < 2 || g.ny < 2 || !(g.x1 > g.x0) || !(g.y1 > g.y0))
    throw ConfigError("invalid grid specification");
  return g;
}

struct Report {
  std::ostringstream text;
  bool all_pass = true;

  void check(const std::string& name, double residual, double tol) {
    const bool ok = residual <= tol;
    all_pass = all_pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s residual %.3e  tol %.3e  %s\n",
                  name.c_str(), residual, tol, ok ? "PASS" : "FAIL");
    text << buf;
  }
  void note(const std::string& line) { text << line << "\n"; }
};

void emit_report(const Report& r, const std::string& out_path) {
  std::fputs(r.text.str().c_str(), stdout);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << r.text.str();
  }
}

std::vector<Point2> sample_points(const RectGrid& g) {
  std::vector<Point2> pts;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) pts.push_back(g.node(i, j));
  return pts;
}

// -------------------------------------------------------------------------
// identities

int cmd_identities(const Section& cfg, const std::string& out_path,
                   std::optional<double> tol_flag) {
  const double tol = tol_flag.value_or(get_double(cfg, "tol", 1e-8));
  const double tol_canon = get_double(cfg, "tol_canonical", 1e-9);
  const ScalarField2 s = get_field(cfg, "conformal_exponent", "0");
  const ScalarField2 f = get_field(cfg, "torsion_potential", "0");
  const ScalarField2 sigma =
      get_field(cfg, "canonical_sigma", "0.2*sin(x) + 0.1*x*y");
  const ScalarField2 ftest =
      get_field(cfg, "scalar_test", "sin(x)*exp(0.3*y) + x^2*y");
  const VectorField2 utest{get_field(cfg, "vector_test_1", "x^2 + y + 1"),
                           get_field(cfg, "vector_test_2",
                                     "cos(x*y) + 0.5*x")};
  RectGrid pgrid;
  pgrid.x0 = get_double(cfg, "xmin", -0.8);
  pgrid.x1 = get_double(cfg, "xmax", 0.8);
  pgrid.y0 = get_double(cfg, "ymin", -0.8);
  pgrid.y1 = get_double(cfg, "ymax", 0.8);
  pgrid.nx = get_int(cfg, "nx", 5);
  pgrid.ny = get_int(cfg, "ny", 5);
  const std::vector<Point2> pts = sample_points(pgrid);

  const Metric2 a = Metric2::conformal(s);
  const VectorField2 t{deriv(f, 1), deriv(f, 2)};
  const Connection2 conn = Connection2::vectorial(a, t);

  Report rep;
  double d_stmt = 0, d_cs = 0, d_cv = 0, d_rt = 0, d_anti = 0, d_ric = 0;
  for (const Point2& p : pts) {
    d_stmt = std::max(d_stmt, curvature_decomposition_defect(conn, p));
    d_cs = std::max(d_cs, commutator_scalar_defect(conn, ftest, p));
    d_cv = std::max(d_cv, commutator_vector_defect(conn, utest, p));
    d_rt = std::max(d_rt, distortion_roundtrip_defect(conn, a, p));
    const CurvatureData r = curvature_of(conn, p);
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be)
          for (int nu = 0; nu < 2; ++nu)
            d_anti = std::max(d_anti, std::fabs(r.R[k][al][be][nu].v +
                                                r.R[al][k][be][nu].v));
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        double tr = 0;
        for (int k = 0; k < 2; ++k) tr += r.R[al][be][k][k].v;
        d_ric = std::max(d_ric, std::fabs(r.ricci[al][be].v -
                                          r.ricci[be][al].v + tr));
      }
  }
  rep.check("curvature-decomposition", d_stmt, tol);
  rep.check("commutator-scalar", d_cs, tol);
  rep.check("commutator-vector", d_cv, tol);
  rep.check("distortion-roundtrip", d_rt, tol);
  rep.check("curvature-antisymmetry", d_anti, tol);
  rep.check("ricci-antisymmetric-part", d_ric, tol);

  // Volume compatibility: residual of t + v - d psi with psi = +-f under
  // both trace conventions; report the best combination.
  double best = std::numeric_limits<double>::infinity();
  std::string winner;
  for (int sg : {+1, -1}) {
    const ScalarField2 psi = f * static_cast<double>(sg);
    const VolumeCompatibility vc = volume_compatibility(conn, a, psi, pts);
    if (vc.residual_second_slot < best) {
      best = vc.residual_second_slot;
      winner = std::string("psi = ") + (sg > 0 ? "+" : "-") +
               "f, second-slot trace";
    }
    if (vc.residual_first_slot < best) {
      best = vc.residual_first_slot;
      winner = std::string("psi = ") + (sg > 0 ? "+" : "-") +
               "f, first-slot trace";
    }
  }
  rep.check("volume-compatibility", best, tol);
  rep.note("  winning convention: " + winner);

  // Canonical transform invariance.
  double d_full = 0, d_scal = 0, d_tor = 0;
  const CanonicalPair cp = canonical_transform(a, conn, sigma, pts);
  for (const Point2& p : pts) {
    const CurvatureData r0 = curvature_of(conn, p);
    const CurvatureData r1 = curvature_of(cp.connection, p);
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
          for (int nu = 0; nu < 2; ++nu)
            d_full = std::max(d_full, std::fabs(r0.R[k][al][be][nu].v -
                                                r1.R[k][al][be][nu].v));
          d_full = std::max(d_full, std::fabs(r0.ricci[al][be].v -
                                              r1.ricci[al][be].v));
        }
    const double sc0 = scalar_curvature(conn, a, p).v;
    const double sc1 = scalar_curvature(cp.connection, cp.metric, p).v;
    const double sg = sigma.value(p);
    d_scal = std::max(d_scal, std::fabs(sc1 - std::exp(2.0 * sg) * sc0));
    const TorsionData t0 = torsion_of(conn, p);
    const TorsionData t1 = torsion_of(cp.connection, p);
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        for (int k = 0; k < 2; ++k) {
          // Traceless part of T_{al be}^k (pure-trace in 2D, so this is the
          // deviation from the trace reconstruction).
          auto traceless = [](const TorsionData& td, int A, int B, int K) {
            double v = td.T[A][B][K].v;
            if (K == B) v -= td.trace_tk[A].v;
            if (K == A) v += td.trace_tk[B].v;
            return v;
          };
          d_tor = std::max(d_tor, std::fabs(traceless(t0, al, be, k) -
                                            traceless(t1, al, be, k)));
        }
  }
  rep.check("canonical-curvature", d_full, tol_canon);
  rep.check("canonical-scalar-scaling", d_scal, tol_canon);
  rep.check("canonical-traceless-torsion", d_tor, tol_canon);

  // Gauss-curvature diagnostics at the grid corners and center.
  for (const Point2& p : {pgrid.node(0, 0), pgrid.node(pgrid.nx / 2,
                                                       pgrid.ny / 2),
                          pgrid.node(pgrid.nx - 1, pgrid.ny - 1)}) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "  K(%.4g, %.4g) = %.12g", p.x, p.y,
                  gauss_curvature(a, p));
    rep.note(buf);
  }

  emit_report(rep, out_path);
  return rep.all_pass ? 0 : 1;
}

// -------------------------------------------------------------------------
// solve

void write_solution_csv(const std::string& path,
                        const ConformalGaugeState& st,
                        const ScalarField2& aux_col, const RectGrid& g) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) throw ConfigError("cannot open output file: " + path);
  std::fputs("x,y,phi,aux,R,T,K,sqrt_a\n", out);
  const Metric2 chart = st.chart_metric();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Point2 p = g.node(i, j);
      const double phi = st.phi().value(p);
      const double aux = aux_col.value(p);
      const double R = st.curvature_scalar(p).v;
      const double T = std::sqrt(std::max(0.0, st.torsion_sq_reported(p)));
      const double K = gauss_curvature(chart, p);
      const MetricJets m = chart.eval(p);
      const double sqrt_a =
          std::sqrt(m.a[0][0].v * m.a[1][1].v - m.a[0][1].v * m.a[0][1].v);
      std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                   p.x, p.y, phi, aux, R, T, K, sqrt_a);
    }
  std::fclose(out);
}

int cmd_solve(const Section& cfg, const std::string& out_path,
              std::optional<double> tol_flag) {
  const double tol = tol_flag.value_or(get_double(cfg, "tol", 1e-6));
  const std::string cls = get_str(cfg, "class", "i");
  const Couplings c(get_double(cfg, "sigma", 1.0),
                    get_double(cfg, "mu", 1.0),
                    get_double(cfg, "lambda", 4.0));
  const RectGrid g = get_grid(cfg, -2.0, 2.0, 41);
  const std::string csv = out_path.empty() ? "solution.csv" : out_path;

  ConformalGaugeState st = [&]() {
    if (cls == "i") {
      ClassISolution sol;
      const std::string br = get_str(cfg, "branch", "plus");
      if (br != "plus" && br != "minus")
        throw ConfigError("branch must be plus or minus");
      sol.sign = br == "plus" ? BranchSign::Plus : BranchSign::Minus;
      sol.a_c = get_double(cfg, "a_c", 1.0);
      sol.d_c = get_double(cfg, "d_c", 1.0);
      sol.b_c = cplx(get_double(cfg, "b_re", 0.0),
                     get_double(cfg, "b_im", 0.0));
      sol.c = c;
      try {
        return class1_build(sol);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("class-(i) parameters rejected: ") +
                          e.what());
      }
    }
    if (cls == "ii") {
      const double A = get_double(cfg, "A", 0.0);
      const double h0 = get_double(cfg, "h0", 1.0);
      const double xi0 = get_double(cfg, "xi0", 0.0);
      const double xi_min = get_double(cfg, "xi_min", std::min(g.x0 * 2, -4.0));
      const double xi_max = get_double(cfg, "xi_max", std::max(g.x1 * 2, 4.0));
      try {
        ClassIISolution sol(c, A, h0, HolomorphicField::identity(), xi_min,
                            xi_max, xi0);
        return sol.state();
      } catch (const std::exception& e) {
        throw ConfigError(std::string("class-(ii) parameters rejected: ") +
                          e.what());
      }
    }
    throw ConfigError("class must be 'i' or 'ii'");
  }();

  write_solution_csv(csv, st, st.aux(), g);

  Report rep;
  double el = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      el = std::max(el, el_residual(st, g.node(i, j)).sup());
  rep.check("euler-lagrange-sup", el, tol);
  const ActionReport ar = action_eval(st, g);
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "  action %.12g  area %.12g  mean-R %.12g\n"
                "  gauss-bonnet %.12g  chi(disk) %.6g  chi(sphere) %.6g",
                ar.action, ar.area, ar.mean_R, ar.gauss_bonnet, ar.chi_disk,
                ar.chi_sphere);
  rep.note(buf);
  if (cls == "i") {
    const double radius = std::max(std::fabs(g.x1), std::fabs(g.y1));
    const ActionReport pl = action_eval_plane(st, radius);
    std::snprintf(buf, sizeof buf,
                  "  plane-extrapolated: area %.12g  gauss-bonnet %.12g  "
                  "chi(sphere) %.6g",
                  pl.area, pl.gauss_bonnet, pl.chi_sphere);
    rep.note(buf);
  }
  rep.note("  wrote " + csv);
  emit_report(rep, "");
  return rep.all_pass ? 0 : 1;
}

// -------------------------------------------------------------------------
// geodesic

int cmd_geodesic(const Section& cfg, const std::string& out_path) {
  const ScalarField2 phi = get_field(cfg, "phi", "0");
  const cplx z0(get_double(cfg, "x0", 0.0), get_double(cfg, "y0", 0.0));
  const cplx v0(get_double(cfg, "vx0", 1.0), get_double(cfg, "vy0", 0.0));
  const int steps = get_int(cfg, "steps", 1000);
  const double dtau = get_double(cfg, "dtau", 1e-3);
  if (steps < 1 || !(dtau > 0)) throw ConfigError("bad steps/dtau");

  const ConformalTrace tr = conformal_geodesic(phi, z0, v0, steps, dtau);
  const std::string csv = out_path.empty() ? "geodesic.csv" : out_path;
  std::FILE* out = std::fopen(csv.c_str(), "wb");
  if (!out) throw ConfigError("cannot open output file: " + csv);
  std::fputs("tau,x,y,vx,vy,first_integral\n", out);
  for (std::size_t k = 0; k < tr.trace.samples.size(); ++k) {
    const GeodesicState& s = tr.trace.samples[k];
    std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.s, s.pos.x,
                 s.pos.y, s.vel[0], s.vel[1], tr.first_integral[k]);
  }
  std::fclose(out);
  std::printf("wrote %s (%zu samples%s), length %.12g\n", csv.c_str(),
              tr.trace.samples.size(),
              tr.trace.truncated ? ", truncated at domain edge" : "",
              tr.length);
  return 0;
}

// -------------------------------------------------------------------------
// flatness

int cmd_flatness(const Section& cfg, const std::string& out_path,
                 std::optional<double> tol_flag) {
  const double tol = tol_flag.value_or(get_double(cfg, "tol", 1e-8));
  const ScalarField2 s = get_field(cfg, "conformal_exponent", "0");
  const ScalarField2 f = get_field(cfg, "torsion_potential", "0");
  const Metric2 a = Metric2::conformal(s);
  const VectorField2 t{deriv(f, 1), deriv(f, 2)};
  const RectGrid g = get_grid(cfg, -0.8, 0.8, 33);

  Report rep;
  double defect = 0, curv = 0;
  const Connection2 conn = Connection2::vectorial(a, t);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Point2 p = g.node(i, j);
      defect = std::max(defect, flatness_defect(a, t, p));
      const CurvatureData r = curvature_of(conn, p);
      for (int k = 0; k < 2; ++k)
        for (int al = 0; al < 2; ++al)
          for (int be = 0; be < 2; ++be)
            for (int nu = 0; nu < 2; ++nu)
              curv = std::max(curv, std::fabs(r.R[k][al][be][nu].v));
    }
  rep.check("flatness-defect", defect, tol);
  rep.check("connection-curvature", curv, std::max(tol, 1e-7));

  // Potential construction: solve Delta_a u = K with the exact boundary
  // trace; for conformal metrics the solution is u = -conformal_exponent.
  const ScalarField2 boundary = s * -1.0;
  const PoissonResult pr = solve_flat_potential(a, g, boundary);
  double err = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      err = std::max(err, std::fabs(pr.at(i, j) + s.value(g.node(i, j))));
  const double h = std::max(g.hx(), g.hy());
  rep.check("potential-error", err, 5.0 * h * h);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "  poisson iterations %d, linear residual %.3e",
                pr.iterations, pr.residual);
  rep.note(buf);
  emit_report(rep, out_path);
  return rep.all_pass ? 0 : 1;
}

// -------------------------------------------------------------------------
// lattice

int cmd_lattice(long m, long n, double d) {
  LatticeModel lat;
  lat.d = d;
  const DiscreteBurgers b = burgers(lat, m, n);
  const double gram = burgers_strength_gram(lat, m, n);
  std::printf("burgers(%ld, %ld) with d = %.6g Å\n", m, n, d);
  std::printf("  vector  = (%.17g, %.17g) Å\n", b.bx, b.by);
  std::printf("  strength = %.2f Å (%.17g)\n", b.strength, b.strength);
  std::printf("  gram cross-check = %.17g (diff %.3e)\n", gram,
              std::fabs(gram - b.strength));
  const SWCounts sw = stone_wales_counts(6, 6, 6, 6);
  std::printf("  reference (6,6,6,6) polygon patch: %ld atoms, %ld bonds\n",
              sw.v, sw.c);
  return std::fabs(gram - b.strength) <= 1e-12 * std::max(1.0, gram) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matgeo: two-dimensional metric-affine toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<double> tol_flag;
  app.add_option("--config", config_path, "config file (INI key = value)");
  app.add_option("--out", out_path, "output file (CSV or report)");
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "override tolerance");

  auto* c_ident = app.add_subcommand("identities", "run identity suites");
  auto* c_solve = app.add_subcommand("solve", "build a solution grid");
  auto* c_geo = app.add_subcommand("geodesic", "integrate a geodesic");
  auto* c_flat = app.add_subcommand("flatness", "flatness and potential");
  auto* c_lat = app.add_subcommand("lattice", "discrete Burgers vectors");
  long lat_m = 0, lat_n = 1;
  double lat_d = 1.42;
  for (CLI::App* sub : {c_ident, c_solve, c_geo, c_flat, c_lat})
    sub->fallthrough();
  c_lat->add_option("--m", lat_m, "first lattice index");
  c_lat->add_option("--n", lat_n, "second lattice index");
  c_lat->add_option("--d", lat_d, "bond length in Å");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (tol_opt->count() > 0) tol_flag = tol_value;

  try {
    if (c_lat->parsed()) return cmd_lattice(lat_m, lat_n, lat_d);
    std::map<std::string, Section> ini;
    if (!config_path.empty()) ini = parse_ini(config_path);
    if (c_ident->parsed())
      return cmd_identities(ini["identities"], out_path, tol_flag);
    if (c_solve->parsed()) return cmd_solve(ini["solve"], out_path, tol_flag);
    if (c_geo->parsed()) return cmd_geodesic(ini["geodesic"], out_path);
    if (c_flat->parsed())
      return cmd_flatness(ini["flatness"], out_path, tol_flag);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
