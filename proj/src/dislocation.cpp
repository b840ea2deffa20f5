#include "matgeo/dislocation.hpp"

#include <cmath>

#include "matgeo/quadrature.hpp"

namespace matgeo {

FrameJets frame_jets(const Frame2& f, const Point2& p) {
  FrameJets out;
  out.e[0][0] = f.e1.c1.eval(p);
  out.e[0][1] = f.e1.c2.eval(p);
  out.e[1][0] = f.e2.c1.eval(p);
  out.e[1][1] = f.e2.c2.eval(p);
  out.det = out.e[0][0] * out.e[1][1] - out.e[0][1] * out.e[1][0];
  if (std::fabs(out.det.v) < 1e-14)
    throw FieldError("frame is degenerate at the point");
  const Jet inv_det = recip(out.det);
  out.co[0][0] = out.e[1][1] * inv_det;
  out.co[0][1] = -out.e[1][0] * inv_det;
  out.co[1][0] = -out.e[0][1] * inv_det;
  out.co[1][1] = out.e[0][0] * inv_det;
  return out;
}

AnholonomyData anholonomy_of(const Frame2& f, const Point2& p) {
  const FrameJets fj = frame_jets(f, p);
  // [e_a, e_b]^k = e_a^m d_m e_b^k - e_b^m d_m e_a^k
  Jet br[2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) {
        Jet v = Jet::constant(0.0);
        for (int m = 0; m < 2; ++m)
          v = v + fj.e[a][m] * deriv(fj.e[b][k], m + 1) -
              fj.e[b][m] * deriv(fj.e[a][k], m + 1);
        br[a][b][k] = v;
      }
  AnholonomyData out;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Jet v = Jet::constant(0.0);
        for (int k = 0; k < 2; ++k) v = v + fj.co[c][k] * br[a][b][k];
        out.C[c][a][b] = v;
      }
  out.bracket[0] = br[0][1][0];
  out.bracket[1] = br[0][1][1];
  return out;
}

Frame2 rotate_frame(const Frame2& f, const ScalarField2& theta) {
  const ScalarField2 c = cos(theta), s = sin(theta);
  Frame2 out;
  out.e1 = {c * f.e1.c1 + s * f.e2.c1, c * f.e1.c2 + s * f.e2.c2};
  out.e2 = {-(s * f.e1.c1) + c * f.e2.c1, -(s * f.e1.c2) + c * f.e2.c2};
  return out;
}

DislocationField burgers_from_frame(const Frame2& e, const ScalarField2& rho,
                                    int eps) {
  auto bracket_k = [e](int k) {
    return ScalarField2::from_function([e, k](const Point2& p) {
      return anholonomy_of(e, p).bracket[k];
    });
  };
  auto component = [&](int k) {
    ScalarField2 br = bracket_k(k);
    return ScalarField2::from_function([br, rho, k](const Point2& p) {
      const Jet r = rho.eval(p);
      const Jet b = br.eval(p);
      if (r.v < 0.0) throw FieldError("negative dislocation density");
      if (r.v == 0.0) {
        if (std::fabs(b.v) > 1e-12)
          throw FieldError(
              "zero density where the frame commutator does not vanish");
        return Jet::constant(0.0);
      }
      return b / r;
    });
  };
  return DislocationField{{component(0), component(1)}, rho, eps};
}

VectorialAnholonomy vectorial_anholonomy(const Frame2& e, const Point2& p) {
  const AnholonomyData an = anholonomy_of(e, p);
  VectorialAnholonomy out{};
  // C^c_{ab} = t_b delta^c_a - t_a delta^c_b  =>  t_b = C^a_{ab}.
  for (int b = 0; b < 2; ++b) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a) v += an.C[a][a][b].v;
    out.t[b] = v;
  }
  double worst = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double model =
            (c == a ? out.t[b] : 0.0) - (c == b ? out.t[a] : 0.0);
        worst = std::max(worst, std::fabs(an.C[c][a][b].v - model));
      }
  out.residual = worst;
  return out;
}

FlatCurvatureResult flat_curvature_rhs(const Metric2& a,
                                       const VectorField2& t_cov,
                                       const std::array<double, 2>& u,
                                       const std::array<double, 2>& v,
                                       const std::array<double, 2>& w,
                                       const Point2& p, double tol) {
  const MetricJets m = a.eval(p);
  const Connection2 conn = Connection2::vectorial(a, t_cov);
  // The derivative entering the curvature representation carries the torsion
  // contribution with the opposite orientation to the flat connection above.
  const Connection2 conn_rep = Connection2::vectorial(
      a, VectorField2{t_cov.c1 * -1.0, t_cov.c2 * -1.0});
  // Torsion vector t^k and its covariant derivative.
  const Jet tc[2] = {t_cov.c1.eval(p), t_cov.c2.eval(p)};
  VectorField2 t_vec{
      ScalarField2::from_function([a, t_cov](const Point2& q) {
        const MetricJets mq = a.eval(q);
        const Jet t1 = t_cov.c1.eval(q), t2 = t_cov.c2.eval(q);
        return mq.inv[0][0] * t1 + mq.inv[0][1] * t2;
      }),
      ScalarField2::from_function([a, t_cov](const Point2& q) {
        const MetricJets mq = a.eval(q);
        const Jet t1 = t_cov.c1.eval(q), t2 = t_cov.c2.eval(q);
        return mq.inv[1][0] * t1 + mq.inv[1][1] * t2;
      })};
  const auto nt = covariant_deriv_vector(conn_rep, t_vec, p);
  auto dir_deriv = [&](const std::array<double, 2>& dir, int k) {
    return dir[0] * nt[0][k].v + dir[1] * nt[1][k].v;
  };
  auto inner_vec = [&](const std::array<double, 2>& x,
                       const std::array<double, 2>& y) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += m.a[i][j].v * x[i] * y[j];
    return s;
  };
  double t_up[2];
  for (int k = 0; k < 2; ++k)
    t_up[k] = m.inv[k][0].v * tc[0].v + m.inv[k][1].v * tc[1].v;
  const double t_norm2 = t_up[0] * tc[0].v + t_up[1] * tc[1].v;

  std::array<double, 2> nut{dir_deriv(u, 0), dir_deriv(u, 1)};
  std::array<double, 2> nvt{dir_deriv(v, 0), dir_deriv(v, 1)};
  const double uw = inner_vec(u, w), vw = inner_vec(v, w);
  std::array<double, 2> term1{uw * nvt[0] - vw * nut[0],
                              uw * nvt[1] - vw * nut[1]};
  std::array<double, 2> au{nut[0] + t_norm2 * u[0], nut[1] + t_norm2 * u[1]};
  std::array<double, 2> av{nvt[0] + t_norm2 * v[0], nvt[1] + t_norm2 * v[1]};
  const double auw = inner_vec(au, w), avw = inner_vec(av, w);
  FlatCurvatureResult out;
  for (int k = 0; k < 2; ++k)
    out.rhs[k] = -(term1[k] + auw * v[k] - avw * u[k]);

  // Levi-Civita curvature action R^a(u,v)w.
  const Connection2 lc = Connection2::levi_civita(a);
  const CurvatureData r = curvature_of(lc, p);
  for (int k = 0; k < 2; ++k) {
    double s = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
      for (int m1 = 0; m1 < 2; ++m1)
        for (int l = 0; l < 2; ++l)
          s += r.R[s1][m1][l][k].v * u[s1] * v[m1] * w[l];
    out.lc_action[k] = s;
  }
  const CurvatureData rc = curvature_of(conn, p);
  double defect = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k)
          defect = std::max(defect, std::fabs(rc.R[i][j][l][k].v));
  out.flat_defect = defect;
  out.applicable = defect <= tol;
  return out;
}

double flatness_defect(const Metric2& a, const VectorField2& t_cov,
                       const Point2& p) {
  VectorField2 t_vec{
      ScalarField2::from_function([a, t_cov](const Point2& q) {
        const MetricJets mq = a.eval(q);
        return mq.inv[0][0] * t_cov.c1.eval(q) +
               mq.inv[0][1] * t_cov.c2.eval(q);
      }),
      ScalarField2::from_function([a, t_cov](const Point2& q) {
        const MetricJets mq = a.eval(q);
        return mq.inv[1][0] * t_cov.c1.eval(q) +
               mq.inv[1][1] * t_cov.c2.eval(q);
      })};
  return gauss_curvature(a, p) - div_metric(a, t_vec, p);
}

LineCongruence line_congruence(const DislocationField& d, const Metric2& a,
                               const std::vector<Point2>& seeds, double step,
                               int n_steps, const Domain& domain) {
  LineCongruence out;
  for (const Point2& seed : seeds) {
    std::vector<Point2> line;
    bool cut = false;
    Point2 x = seed;
    line.push_back(x);
    auto rhs = [&](const Point2& q) { return congruence_direction(d, a, q); };
    for (int i = 0; i < n_steps; ++i) {
      if (!domain.contains(x)) {
        cut = true;
        break;
      }
      try {
        const auto k1 = rhs(x);
        const auto k2 = rhs({x.x + 0.5 * step * k1[0], x.y + 0.5 * step * k1[1]});
        const auto k3 = rhs({x.x + 0.5 * step * k2[0], x.y + 0.5 * step * k2[1]});
        const auto k4 = rhs({x.x + step * k3[0], x.y + step * k3[1]});
        x.x += step / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        x.y += step / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
      } catch (const FieldError&) {
        cut = true;
        break;
      }
      line.push_back(x);
    }
    out.lines.push_back(std::move(line));
    out.truncated.push_back(cut);
  }
  return out;
}

std::array<double, 2> congruence_direction(const DislocationField& d,
                                           const Metric2& a, const Point2& p) {
  const MetricJets m = a.eval(p);
  const double b[2] = {d.b.c1.value(p), d.b.c2.value(p)};
  if (b[0] == 0.0 && b[1] == 0.0)
    throw FieldError("Burgers vector vanishes on the congruence path");
  // Vector a-orthogonal to b: l ~ eps^{k nu} b_nu / sqrt(a) with b lowered.
  double bl[2];
  for (int k = 0; k < 2; ++k) bl[k] = m.a[k][0].v * b[0] + m.a[k][1].v * b[1];
  double l[2] = {bl[1], -bl[0]};
  const double nrm = std::sqrt(m.a[0][0].v * l[0] * l[0] +
                               2.0 * m.a[0][1].v * l[0] * l[1] +
                               m.a[1][1].v * l[1] * l[1]);
  l[0] /= nrm;
  l[1] /= nrm;
  if (l[0] < 0.0 || (l[0] == 0.0 && l[1] < 0.0)) {
    l[0] = -l[0];
    l[1] = -l[1];
  }
  return {l[0], l[1]};
}

std::array<double, 2> self_balance_residual(const Frame2& e, const Metric2& a,
                                            const Point2& p,
                                            double ortho_tol) {
  const MetricJets m = a.eval(p);
  const FrameJets fj = frame_jets(e, p);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double g = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          g += m.a[k][l].v * fj.e[i][k].v * fj.e[j][l].v;
      if (std::fabs(g - (i == j ? 1.0 : 0.0)) > ortho_tol)
        throw FieldError("self-balance residual requires an orthonormal frame");
    }
  const AnholonomyData an = anholonomy_of(e, p);
  std::array<double, 2> out{};
  const VectorField2 eb[2] = {e.e1, e.e2};
  for (int b = 0; b < 2; ++b) {
    double tb = an.C[0][0][b].v + an.C[1][1][b].v;
    out[b] = div_metric(a, eb[b], p) - tb;
  }
  return out;
}

IsothermalResult isothermal_residual(const Metric2& a,
                                     const VectorField2& w_cov, double r,
                                     const Point2& p) {
  VectorField2 w_vec{
      ScalarField2::from_function([a, w_cov](const Point2& q) {
        const MetricJets mq = a.eval(q);
        return mq.inv[0][0] * w_cov.c1.eval(q) +
               mq.inv[0][1] * w_cov.c2.eval(q);
      }),
      ScalarField2::from_function([a, w_cov](const Point2& q) {
        const MetricJets mq = a.eval(q);
        return mq.inv[1][0] * w_cov.c1.eval(q) +
               mq.inv[1][1] * w_cov.c2.eval(q);
      })};
  IsothermalResult out{};
  out.residual = div_metric(a, w_vec, p) + 2.0 * gauss_curvature(a, p) - r;
  const Jet w1 = w_cov.c1.eval(p), w2 = w_cov.c2.eval(p);
  out.F12 = 0.5 * (deriv(w2, 1).v - deriv(w1, 2).v);
  return out;
}

TeleparallelReport closed_teleparallelism_check(const Frame2& e,
                                                const RectGrid& grid,
                                                double const_tol) {
  TeleparallelReport rep{0.0, 0.0, FrameClass::Varying};
  double cmin[2][2][2], cmax[2][2][2];
  bool first = true;
  double max_abs = 0.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) {
      const Point2 p = grid.node(i, j);
      const AnholonomyData an = anholonomy_of(e, p);
      const FrameJets fj = frame_jets(e, p);
      for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const double v = an.C[c][a][b].v;
            max_abs = std::max(max_abs, std::fabs(v));
            if (first) {
              cmin[c][a][b] = cmax[c][a][b] = v;
            } else {
              cmin[c][a][b] = std::min(cmin[c][a][b], v);
              cmax[c][a][b] = std::max(cmax[c][a][b], v);
            }
          }
      first = false;
      // Jacobi identity: cyclic C-squared terms plus frame derivatives of C.
      for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d) {
              double v = 0.0;
              for (int s = 0; s < 2; ++s)
                v += an.C[s][a][b].v * an.C[c][d][s].v +
                     an.C[s][b][d].v * an.C[c][a][s].v +
                     an.C[s][d][a].v * an.C[c][b][s].v;
              auto frame_deriv = [&](int dir, const Jet& field) {
                return fj.e[dir][0].v * field.d1 + fj.e[dir][1].v * field.d2;
              };
              v += frame_deriv(d, an.C[c][a][b]) +
                   frame_deriv(a, an.C[c][b][d]) +
                   frame_deriv(b, an.C[c][d][a]);
              rep.jacobi_residual = std::max(rep.jacobi_residual, std::fabs(v));
            }
    }
  double spread = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        spread = std::max(spread, cmax[c][a][b] - cmin[c][a][b]);
  rep.structure_spread = spread;
  if (max_abs <= const_tol)
    rep.classification = FrameClass::Commutative;
  else if (spread <= const_tol)
    rep.classification = FrameClass::ConstantStructure;
  else
    rep.classification = FrameClass::Varying;
  return rep;
}

CountResult dislocation_count(const ScalarField2& rho, const Metric2& a,
                              const RectGrid& grid) {
  bool zero_warn = true;
  auto f = [&](const Point2& p) {
    const double r = rho.value(p);
    if (r < 0.0) throw FieldError("negative dislocation density");
    if (r > 0.0) zero_warn = false;
    return r * a.eval(p).sqrt_det.v;
  };
  const double coarse =
      simpson_rect(f, {grid.x0, grid.x1, grid.y0, grid.y1,
                       (grid.nx + 1) / 2, (grid.ny + 1) / 2});
  const double fine = simpson_rect(
      f, {grid.x0, grid.x1, grid.y0, grid.y1, grid.nx, grid.ny});
  CountResult out{fine, std::fabs(fine - coarse), zero_warn};
  return out;
}

CountResult dislocation_count_plane(const ScalarField2& rho, const Metric2& a,
                                    double radius, int nr, int ntheta) {
  bool zero_warn = true;
  auto f = [&](const Point2& p) {
    const double r = rho.value(p);
    if (r < 0.0) throw FieldError("negative dislocation density");
    if (r > 0.0) zero_warn = false;
    return r * a.eval(p).sqrt_det.v;
  };
  const double i1 = simpson_disk(f, {0.0, 0.0, radius, nr, ntheta});
  const double i2 = simpson_disk(f, {0.0, 0.0, 2.0 * radius, 2 * nr, ntheta});
  // Tail assumed O(1/R^2): halving the tail estimate via one Richardson step.
  const double extrapolated = (4.0 * i2 - i1) / 3.0;
  CountResult out{extrapolated, std::fabs(extrapolated - i2), zero_warn};
  return out;
}

}  // namespace matgeo
