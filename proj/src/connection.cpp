#include "matgeo/connection.hpp"

namespace matgeo {

ConnJets levi_civita_jets(const MetricJets& m) {
  // da[al][be][s] = d_al a_{be s}
  Jet da[2][2][2];
  for (int be = 0; be < 2; ++be)
    for (int s = 0; s < 2; ++s) {
      da[0][be][s] = deriv(m.a[be][s], 1);
      da[1][be][s] = deriv(m.a[be][s], 2);
    }
  ConnJets g;
  for (int k = 0; k < 2; ++k)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        Jet sum = Jet::constant(0.0);
        for (int s = 0; s < 2; ++s)
          sum = sum +
                m.inv[k][s] * (da[al][be][s] + da[be][al][s] - da[s][al][be]);
        g.G[k][al][be] = 0.5 * sum;
      }
  return g;
}

Connection2 Connection2::from_fields(const ScalarField2 comps[2][2][2]) {
  std::array<ScalarField2, 8> f{comps[0][0][0], comps[0][0][1],
                                comps[0][1][0], comps[0][1][1],
                                comps[1][0][0], comps[1][0][1],
                                comps[1][1][0], comps[1][1][1]};
  return from_function([f](const Point2& p) {
    ConnJets g;
    int idx = 0;
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) g.G[k][al][be] = f[idx++].eval(p);
    return g;
  });
}

Connection2 Connection2::levi_civita(const Metric2& a) {
  return from_function(
      [a](const Point2& p) { return levi_civita_jets(a.eval(p)); });
}

Connection2 Connection2::with_distortion(const Metric2& a, TensorField3 q) {
  return from_function([a, q](const Point2& p) {
    ConnJets g = levi_civita_jets(a.eval(p));
    const Tens3 d = q(p);
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be)
          g.G[k][al][be] = g.G[k][al][be] + d.c[al][be][k];
    return g;
  });
}

Connection2 Connection2::vectorial(const Metric2& a,
                                   const VectorField2& t_cov) {
  return from_function([a, t_cov](const Point2& p) {
    const MetricJets m = a.eval(p);
    ConnJets g = levi_civita_jets(m);
    const Jet t[2] = {t_cov.c1.eval(p), t_cov.c2.eval(p)};
    Jet tu[2];
    for (int k = 0; k < 2; ++k)
      tu[k] = m.inv[k][0] * t[0] + m.inv[k][1] * t[1];
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
          Jet add = tu[k] * m.a[al][be] * (-1.0);
          if (k == al) add = add + t[be];
          g.G[k][al][be] = g.G[k][al][be] + add;
        }
    return g;
  });
}

Connection2 Connection2::teleparallel(const VectorField2& e1,
                                      const VectorField2& e2) {
  return from_function([e1, e2](const Point2& p) {
    // Frame e_c^k (row c, column k) and its inverse coframe e^c_k.
    Jet e[2][2] = {{e1.c1.eval(p), e1.c2.eval(p)},
                   {e2.c1.eval(p), e2.c2.eval(p)}};
    Jet det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    if (std::fabs(det.v) < 1e-14)
      throw FieldError("frame is degenerate at the point");
    Jet inv_det = recip(det);
    // co[c][k] = e^c_k with e_c^k co[c'][k] summed over k = delta.
    Jet co[2][2];
    co[0][0] = e[1][1] * inv_det;
    co[0][1] = -e[0][1] * inv_det;
    co[1][0] = -e[1][0] * inv_det;
    co[1][1] = e[0][0] * inv_det;
    ConnJets g;
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
          Jet sum = Jet::constant(0.0);
          for (int c = 0; c < 2; ++c)
            sum = sum + e[c][k] * deriv(co[c][be], al + 1);
          g.G[k][al][be] = sum;
        }
    return g;
  });
}

ScalarField2 Connection2::component(int k, int al, int be) const {
  auto fn = fn_;
  return ScalarField2::from_function(
      [fn, k, al, be](const Point2& p) { return (*fn)(p).G[k][al][be]; });
}

}  // namespace matgeo
