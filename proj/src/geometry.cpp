#include "matgeo/geometry.hpp"

#include <cmath>

namespace matgeo {

TorsionData torsion_of(const Connection2& c, const Point2& p) {
  const ConnJets g = c.eval(p);
  TorsionData t;
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int k = 0; k < 2; ++k) {
        t.S[al][be][k] = 0.5 * (g.G[k][al][be] - g.G[k][be][al]);
        t.T[al][be][k] = 2.0 * t.S[al][be][k];
      }
  for (int al = 0; al < 2; ++al) {
    t.trace_tk[al] = t.T[al][0][0] + t.T[al][1][1];
    t.trace_kt[al] = t.T[0][al][0] + t.T[1][al][1];
  }
  return t;
}

NonmetricityData nonmetricity_of(const Connection2& c, const Metric2& a,
                                 const Point2& p) {
  const ConnJets g = c.eval(p);
  const MetricJets m = a.eval(p);
  // nda[al][be][s] = nabla_al a_{be s}
  Jet nda[2][2][2];
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int s = 0; s < 2; ++s) {
        Jet v = deriv(m.a[be][s], al + 1);
        for (int r = 0; r < 2; ++r)
          v = v - g.G[r][al][be] * m.a[r][s] - g.G[r][al][s] * m.a[be][r];
        nda[al][be][s] = v;
      }
  NonmetricityData n;
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) {
      for (int s = 0; s < 2; ++s) n.Wlow[al][be][s] = -nda[al][be][s];
      for (int k = 0; k < 2; ++k) {
        Jet v = Jet::constant(0.0);
        for (int s = 0; s < 2; ++s) v = v + m.inv[k][s] * n.Wlow[al][be][s];
        n.W[al][be][k] = v;
      }
    }
  // w_al = -(1/n) W_{al k}^k with n = 2.
  for (int al = 0; al < 2; ++al)
    n.weyl[al] = -0.5 * (n.W[al][0][0] + n.W[al][1][1]);
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int s = 0; s < 2; ++s)
        n.P[al][be][s] = n.Wlow[al][be][s] + m.a[be][s] * n.weyl[al];
  return n;
}

DistortionData distortion_of(const Connection2& c, const Metric2& a,
                             const Point2& p) {
  const TorsionData t = torsion_of(c, p);
  const NonmetricityData nm = nonmetricity_of(c, a, p);
  const MetricJets m = a.eval(p);
  DistortionData d;
  // Lower the torsion: S_{al nu s} = a_{s k} S_{al nu}^k.
  Jet Sl[2][2][2];
  for (int al = 0; al < 2; ++al)
    for (int nu = 0; nu < 2; ++nu)
      for (int s = 0; s < 2; ++s) {
        Jet v = Jet::constant(0.0);
        for (int k = 0; k < 2; ++k) v = v + m.a[s][k] * t.S[al][nu][k];
        Sl[al][nu][s] = v;
      }
  for (int al = 0; al < 2; ++al)
    for (int nu = 0; nu < 2; ++nu)
      for (int s = 0; s < 2; ++s) {
        d.K[al][nu][s] = Sl[al][nu][s] - Sl[al][s][nu] - Sl[nu][s][al];
        d.V[al][nu][s] = 0.5 * (nm.Wlow[al][nu][s] + nm.Wlow[nu][s][al] -
                                nm.Wlow[s][al][nu]);
        d.Q[al][nu][s] = d.K[al][nu][s] + d.V[al][nu][s];
      }
  return d;
}

CurvatureData curvature_of(const Connection2& c, const Point2& p) {
  const ConnJets g = c.eval(p);
  Jet dg[2][2][2][2];  // dg[m][k][al][be] = d_m G^k_{al be}
  for (int k = 0; k < 2; ++k)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        dg[0][k][al][be] = deriv(g.G[k][al][be], 1);
        dg[1][k][al][be] = deriv(g.G[k][al][be], 2);
      }
  CurvatureData r;
  for (int k = 0; k < 2; ++k)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        for (int nu = 0; nu < 2; ++nu) {
          Jet v = dg[k][nu][al][be] - dg[al][nu][k][be];
          for (int rho = 0; rho < 2; ++rho)
            v = v - (g.G[rho][k][be] * g.G[nu][al][rho] -
                     g.G[rho][al][be] * g.G[nu][k][rho]);
          r.R[k][al][be][nu] = v;
        }
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      r.ricci[al][be] = r.R[0][al][be][0] + r.R[1][al][be][1];
  return r;
}

Jet scalar_curvature(const Connection2& c, const Metric2& a, const Point2& p) {
  const CurvatureData r = curvature_of(c, p);
  const MetricJets m = a.eval(p);
  Jet v = Jet::constant(0.0);
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) v = v + m.inv[al][be] * r.ricci[al][be];
  return v;
}

double gauss_curvature(const Metric2& a, const Point2& p) {
  const Connection2 lc = Connection2::levi_civita(a);
  const CurvatureData r = curvature_of(lc, p);
  const MetricJets m = a.eval(p);
  // K = a_{2 nu} R_{2 1 1}^{nu} / det a, normalized positive on the sphere.
  Jet low = m.a[1][0] * r.R[1][0][0][0] + m.a[1][1] * r.R[1][0][0][1];
  return (low / m.det).v;
}

std::array<std::array<Jet, 2>, 2> covariant_deriv_vector(
    const Connection2& c, const VectorField2& u, const Point2& p) {
  const ConnJets g = c.eval(p);
  const Jet uc[2] = {u.c1.eval(p), u.c2.eval(p)};
  std::array<std::array<Jet, 2>, 2> out;
  for (int al = 0; al < 2; ++al)
    for (int k = 0; k < 2; ++k) {
      Jet v = deriv(uc[k], al + 1);
      for (int be = 0; be < 2; ++be) v = v + g.G[k][al][be] * uc[be];
      out[al][k] = v;
    }
  return out;
}

std::array<std::array<Jet, 2>, 2> covariant_deriv_covector(
    const Connection2& c, const VectorField2& w, const Point2& p) {
  const ConnJets g = c.eval(p);
  const Jet wc[2] = {w.c1.eval(p), w.c2.eval(p)};
  std::array<std::array<Jet, 2>, 2> out;
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) {
      Jet v = deriv(wc[be], al + 1);
      for (int k = 0; k < 2; ++k) v = v - g.G[k][al][be] * wc[k];
      out[al][be] = v;
    }
  return out;
}

double metric_compatibility_defect(const Connection2& c, const Metric2& a,
                                   const Point2& p) {
  const NonmetricityData n = nonmetricity_of(c, a, p);
  double m = 0.0;
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int s = 0; s < 2; ++s)
        m = std::max(m, std::fabs(n.Wlow[al][be][s].v));
  return m;
}

std::array<double, 2> pentagon_closure(const Connection2& c, const Point2& p,
                                       double eps, double df12) {
  const TorsionData t = torsion_of(c, p);
  std::array<double, 2> db{0.0, 0.0};
  // df^{al be} antisymmetric with df^{12} = df12; the sum runs over both
  // index orders.
  for (int k = 0; k < 2; ++k)
    db[k] = eps * (t.S[0][1][k].v - t.S[1][0][k].v) * df12;
  return db;
}

std::array<double, 2> holonomy_defect(const Connection2& c, const Point2& p,
                                      const std::array<double, 2>& v,
                                      double df12) {
  const CurvatureData r = curvature_of(c, p);
  std::array<double, 2> dv{0.0, 0.0};
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      dv[k] += -(r.R[0][1][l][k].v - r.R[1][0][l][k].v) * 0.5 * v[l] * df12;
  return dv;
}

std::array<double, 2> loop_transport_defect(const Connection2& c,
                                            const Point2& p,
                                            const std::array<double, 2>& v,
                                            double h, int steps_per_side) {
  // Transport dv^k = -G^k_{al be} v^be du^al along the four sides of the
  // square with corners p, p+(h,0), p+(h,h), p+(0,h), using midpoint steps.
  std::array<double, 2> vec = v;
  Point2 x = p;
  auto advance = [&](double dx, double dy) {
    const int n = steps_per_side;
    for (int i = 0; i < n; ++i) {
      const double sx = dx / n, sy = dy / n;
      const Point2 mid{x.x + 0.5 * sx, x.y + 0.5 * sy};
      const ConnJets g = c.eval(mid);
      // Midpoint value of the transported vector.
      std::array<double, 2> k1{0.0, 0.0}, vm;
      for (int k = 0; k < 2; ++k)
        for (int be = 0; be < 2; ++be)
          k1[k] -= (g.G[k][0][be].v * sx + g.G[k][1][be].v * sy) * vec[be];
      vm = {vec[0] + 0.5 * k1[0], vec[1] + 0.5 * k1[1]};
      for (int k = 0; k < 2; ++k) {
        double dv = 0.0;
        for (int be = 0; be < 2; ++be)
          dv -= (g.G[k][0][be].v * sx + g.G[k][1][be].v * sy) * vm[be];
        vec[k] += dv;
      }
      x.x += sx;
      x.y += sy;
    }
  };
  advance(h, 0.0);
  advance(0.0, h);
  advance(-h, 0.0);
  advance(0.0, -h);
  return {vec[0] - v[0], vec[1] - v[1]};
}

double div_omega(const Metric2& a, const ScalarField2& psi,
                 const VectorField2& w, const Point2& p) {
  // L_w omega = d_al (g w^al) du1 ^ du2 for omega = g du1 ^ du2,
  // g = e^psi sqrt(a).
  const MetricJets m = a.eval(p);
  const Jet g = exp(psi.eval(p)) * m.sqrt_det;
  const Jet w1 = w.c1.eval(p), w2 = w.c2.eval(p);
  const Jet num = deriv(g * w1, 1) + deriv(g * w2, 2);
  return (num / g).v;
}

double div_metric(const Metric2& a, const VectorField2& w, const Point2& p) {
  return div_omega(a, ScalarField2::constant(0.0), w, p);
}

double divergence_identity_defect(const Connection2& c, const Metric2& a,
                                  const ScalarField2& psi,
                                  const VectorField2& w, const Point2& p) {
  const ConnJets g = c.eval(p);
  const Jet w1 = w.c1.eval(p), w2 = w.c2.eval(p);
  // lhs: nabla_al w^al.
  double lhs = deriv(w1, 1).v + deriv(w2, 2).v;
  const double wv[2] = {w1.v, w2.v};
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) lhs += g.G[al][al][be].v * wv[be];
  // rhs: div_omega w + t(w) - v(w) - w(psi), first-slot torsion trace.
  const TorsionData t = torsion_of(c, p);
  const NonmetricityData n = nonmetricity_of(c, a, p);
  const Jet ps = psi.eval(p);
  double rhs = div_omega(a, psi, w, p);
  for (int al = 0; al < 2; ++al)
    rhs += (t.trace_kt[al].v - n.weyl[al].v) * wv[al];
  rhs -= ps.d1 * wv[0] + ps.d2 * wv[1];
  return std::fabs(lhs - rhs);
}

VolumeCompatibility volume_compatibility(const Connection2& c,
                                         const Metric2& a,
                                         const ScalarField2& psi,
                                         const std::vector<Point2>& pts) {
  VolumeCompatibility out{0.0, 0.0, 0};
  for (const Point2& p : pts) {
    const TorsionData t = torsion_of(c, p);
    const NonmetricityData n = nonmetricity_of(c, a, p);
    const Jet ps = psi.eval(p);
    const double dpsi[2] = {ps.d1, ps.d2};
    for (int al = 0; al < 2; ++al) {
      out.residual_second_slot =
          std::max(out.residual_second_slot,
                   std::fabs(t.trace_tk[al].v - n.weyl[al].v - dpsi[al]));
      out.residual_first_slot =
          std::max(out.residual_first_slot,
                   std::fabs(t.trace_kt[al].v - n.weyl[al].v - dpsi[al]));
    }
  }
  out.winner = out.residual_second_slot <= out.residual_first_slot ? +1 : -1;
  return out;
}

CanonicalPair canonical_transform(const Metric2& a, const Connection2& c,
                                  const ScalarField2& sigma,
                                  const std::vector<Point2>& check_pts,
                                  double compat_tol) {
  for (const Point2& p : check_pts)
    if (metric_compatibility_defect(c, a, p) > compat_tol)
      throw FieldError(
          "canonical transform requires a metric-compatible connection");
  ScalarField2 scale = exp(-2.0 * sigma);
  Metric2 am(scale * a.a11(), scale * a.a12(), scale * a.a22());
  Connection2 cm = Connection2::from_function([c, sigma](const Point2& p) {
    ConnJets g = c.eval(p);
    const Jet s = sigma.eval(p);
    const Jet ds[2] = {deriv(s, 1), deriv(s, 2)};
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        g.G[k][al][k] = g.G[k][al][k] - ds[al];
    return g;
  });
  return CanonicalPair{am, cm};
}

double curvature_decomposition_defect(const Connection2& c, const Point2& p) {
  const CurvatureData r = curvature_of(c, p);
  double defect = 0.0;
  for (int al = 0; al < 2; ++al)
    for (int mu = 0; mu < 2; ++mu)
      for (int la = 0; la < 2; ++la)
        for (int k = 0; k < 2; ++k) {
          double rhs = 0.0;
          if (k == al) rhs += r.ricci[mu][la].v;
          if (k == mu) rhs -= r.ricci[al][la].v;
          defect = std::max(defect, std::fabs(r.R[al][mu][la][k].v - rhs));
        }
  return defect;
}

double commutator_scalar_defect(const Connection2& c, const ScalarField2& f,
                                const Point2& p) {
  const ConnJets g = c.eval(p);
  const Jet fj = f.eval(p);
  const Jet df[2] = {deriv(fj, 1), deriv(fj, 2)};
  const TorsionData td = torsion_of(c, p);
  double defect = 0.0;
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) {
      // nabla_be nabla_al f = d_be d_al f - Gamma^la_{be al} d_la f.
      double lhs = 0.0, rhs = 0.0;
      for (int la = 0; la < 2; ++la) {
        lhs += (g.G[la][al][be].v - g.G[la][be][al].v) * df[la].v;
        rhs += td.T[al][be][la].v * df[la].v;
      }
      defect = std::max(defect, std::fabs(lhs - rhs));
    }
  return defect;
}

double commutator_vector_defect(const Connection2& c, const VectorField2& u,
                                const Point2& p) {
  const ConnJets g = c.eval(p);
  const Jet uj[2] = {u.c1.eval(p), u.c2.eval(p)};
  const TorsionData td = torsion_of(c, p);
  const CurvatureData r = curvature_of(c, p);
  // First covariant derivative as a jet-valued array: nu1[al][nu].
  Jet nu1[2][2];
  for (int al = 0; al < 2; ++al)
    for (int nu = 0; nu < 2; ++nu) {
      Jet v = deriv(uj[nu], al + 1);
      for (int la = 0; la < 2; ++la) v = v + g.G[nu][al][la] * uj[la];
      nu1[al][nu] = v;
    }
  double defect = 0.0;
  for (int be = 0; be < 2; ++be)
    for (int al = 0; al < 2; ++al)
      for (int nu = 0; nu < 2; ++nu) {
        auto second = [&](int b, int a2) {
          double v = deriv(nu1[a2][nu], b + 1).v;
          for (int mu = 0; mu < 2; ++mu) {
            v += g.G[nu][b][mu].v * nu1[a2][mu].v;
            v -= g.G[mu][b][a2].v * nu1[mu][nu].v;
          }
          return v;
        };
        double lhs = second(be, al) - second(al, be);
        double rhs = 0.0;
        for (int la = 0; la < 2; ++la) {
          rhs += r.R[be][al][la][nu].v * uj[la].v;
          rhs += td.T[al][be][la].v * nu1[la][nu].v;
        }
        defect = std::max(defect, std::fabs(lhs - rhs));
      }
  return defect;
}

double distortion_roundtrip_defect(const Connection2& c, const Metric2& a,
                                   const Point2& p) {
  const ConnJets g = c.eval(p);
  const ConnJets lc = Connection2::levi_civita(a).eval(p);
  const DistortionData d = distortion_of(c, a, p);
  const MetricJets m = a.eval(p);
  double defect = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        double q = 0.0;
        for (int nu = 0; nu < 2; ++nu) q += m.inv[k][nu].v * d.Q[al][be][nu].v;
        defect = std::max(
            defect, std::fabs(g.G[k][al][be].v - lc.G[k][al][be].v - q));
      }
  return defect;
}

std::array<std::array<double, 2>, 2> orthonormal_frame(const Metric2& a,
                                                       const Point2& p) {
  const MetricJets m = a.eval(p);
  const double a11 = m.a[0][0].v, a12 = m.a[0][1].v, a22 = m.a[1][1].v;
  std::array<std::array<double, 2>, 2> e{};
  const double n1 = std::sqrt(a11);
  e[0] = {1.0 / n1, 0.0};
  // Second coordinate direction minus its projection on e_1.
  const double proj = a12 / a11;
  double v1 = -proj, v2 = 1.0;
  const double nrm =
      std::sqrt(a11 * v1 * v1 + 2.0 * a12 * v1 * v2 + a22 * v2 * v2);
  e[1] = {v1 / nrm, v2 / nrm};
  return e;
}

}  // namespace matgeo
