#include "matgeo/geodesic.hpp"

#include <cmath>

#include "matgeo/quadrature.hpp"

namespace matgeo {

namespace {

struct Phase {
  double x[2];
  double v[2];
};

Phase rhs_geodesic(const Connection2& c, const Phase& y, bool symmetric_only) {
  const ConnJets g = c.eval({y.x[0], y.x[1]});
  Phase d;
  d.x[0] = y.v[0];
  d.x[1] = y.v[1];
  for (int k = 0; k < 2; ++k) {
    double acc = 0.0;
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        double coef = g.G[k][al][be].v;
        if (symmetric_only)
          coef = 0.5 * (g.G[k][al][be].v + g.G[k][be][al].v);
        acc += coef * y.v[al] * y.v[be];
      }
    d.v[k] = -acc;
  }
  return d;
}

Phase axpy(const Phase& a, double c, const Phase& b) {
  Phase r;
  for (int i = 0; i < 2; ++i) {
    r.x[i] = a.x[i] + c * b.x[i];
    r.v[i] = a.v[i] + c * b.v[i];
  }
  return r;
}

}  // namespace

GeodesicTrace integrate_geodesic(const Connection2& c,
                                 const GeodesicState& init, int steps,
                                 double ds, bool symmetric_only) {
  if (!(ds > 0.0)) throw FieldError("geodesic step must be positive");
  if (init.vel[0] == 0.0 && init.vel[1] == 0.0)
    throw FieldError("geodesic initial velocity must be nonzero");
  GeodesicTrace tr;
  Phase y{{init.pos.x, init.pos.y}, {init.vel[0], init.vel[1]}};
  double s = init.s;
  tr.samples.push_back({s, {y.x[0], y.x[1]}, {y.v[0], y.v[1]}});
  for (int i = 0; i < steps; ++i) {
    try {
      const Phase k1 = rhs_geodesic(c, y, symmetric_only);
      const Phase k2 = rhs_geodesic(c, axpy(y, 0.5 * ds, k1), symmetric_only);
      const Phase k3 = rhs_geodesic(c, axpy(y, 0.5 * ds, k2), symmetric_only);
      const Phase k4 = rhs_geodesic(c, axpy(y, ds, k3), symmetric_only);
      for (int j = 0; j < 2; ++j) {
        y.x[j] += ds / 6.0 * (k1.x[j] + 2.0 * k2.x[j] + 2.0 * k3.x[j] +
                              k4.x[j]);
        y.v[j] += ds / 6.0 * (k1.v[j] + 2.0 * k2.v[j] + 2.0 * k3.v[j] +
                              k4.v[j]);
      }
    } catch (const FieldError&) {
      tr.truncated = true;
      break;
    } catch (const std::domain_error&) {
      tr.truncated = true;
      break;
    }
    if (!std::isfinite(y.x[0]) || !std::isfinite(y.x[1]) ||
        !std::isfinite(y.v[0]) || !std::isfinite(y.v[1])) {
      tr.truncated = true;
      break;
    }
    s += ds;
    tr.samples.push_back({s, {y.x[0], y.x[1]}, {y.v[0], y.v[1]}});
  }
  return tr;
}

std::vector<double> metric_speeds(const Metric2& a, const GeodesicTrace& tr) {
  std::vector<double> out;
  out.reserve(tr.samples.size());
  for (const GeodesicState& st : tr.samples) {
    const MetricJets m = a.eval(st.pos);
    double q = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) q += m.a[i][j].v * st.vel[i] * st.vel[j];
    out.push_back(std::sqrt(q));
  }
  return out;
}

GeodesicTrace natural_parameter(const GeodesicTrace& tr,
                                const std::vector<double>& h, double s0,
                                double c) {
  if (h.size() != tr.samples.size())
    throw FieldError("factor samples must match the trace");
  if (c == 0.0) throw FieldError("affine scale must be nonzero");
  std::vector<double> inv(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw FieldError("pregeodesic factor must be positive");
    inv[i] = 1.0 / h[i];
  }
  const double dt = tr.samples.size() > 1
                        ? tr.samples[1].s - tr.samples[0].s
                        : 1.0;
  std::vector<double> cum(h.size());
  cumulative_integral(inv.data(), static_cast<int>(inv.size()), dt,
                      cum.data());
  GeodesicTrace out;
  out.truncated = tr.truncated;
  out.samples = tr.samples;
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i].s = s0 + c * cum[i];
    // ds/dt = c/h, so dx/ds = v * h / c.
    out.samples[i].vel[0] *= h[i] / c;
    out.samples[i].vel[1] *= h[i] / c;
  }
  return out;
}

std::vector<double> affine_consistency(const Connection2& c, const Metric2& a,
                                       const GeodesicTrace& tr) {
  std::vector<double> out;
  out.reserve(tr.samples.size());
  for (const GeodesicState& st : tr.samples) {
    const NonmetricityData n = nonmetricity_of(c, a, st.pos);
    double r = 0.0;
    for (int al = 0; al < 2; ++al)
      for (int nu = 0; nu < 2; ++nu)
        for (int sg = 0; sg < 2; ++sg)
          r += st.vel[al] * st.vel[nu] * st.vel[sg] * n.Wlow[al][nu][sg].v;
    out.push_back(r);
  }
  return out;
}

ConformalTrace conformal_geodesic(const ScalarField2& phi, cplx z0, cplx v0,
                                  int steps, double dtau) {
  if (!(dtau > 0.0)) throw FieldError("geodesic step must be positive");
  if (std::abs(v0) == 0.0)
    throw FieldError("geodesic initial velocity must be nonzero");
  auto phi_z = [&phi](cplx z) {
    const Jet j = phi.eval({z.real(), z.imag()});
    return cplx(0.5 * j.d1, -0.5 * j.d2);
  };
  ConformalTrace out;
  cplx z = z0, v = v0;
  double tau = 0.0;
  auto record = [&]() {
    out.trace.samples.push_back(
        {tau, {z.real(), z.imag()}, {v.real(), v.imag()}});
    out.first_integral.push_back(std::abs(v) *
                                 std::exp(-phi.value({z.real(), z.imag()})));
  };
  record();
  for (int i = 0; i < steps; ++i) {
    try {
      if (std::abs(v) < 1e-300)
        throw FieldError("geodesic velocity vanished mid-integration");
      const auto f = [&](cplx zz, cplx vv) {
        return 2.0 * phi_z(zz) * vv * vv;
      };
      const cplx k1z = v, k1v = f(z, v);
      const cplx k2z = v + 0.5 * dtau * k1v,
                 k2v = f(z + 0.5 * dtau * k1z, v + 0.5 * dtau * k1v);
      const cplx k3z = v + 0.5 * dtau * k2v,
                 k3v = f(z + 0.5 * dtau * k2z, v + 0.5 * dtau * k2v);
      const cplx k4z = v + dtau * k3v,
                 k4v = f(z + dtau * k3z, v + dtau * k3v);
      z += dtau / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
      v += dtau / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    } catch (const FieldError&) {
      out.trace.truncated = true;
      break;
    } catch (const std::domain_error&) {
      out.trace.truncated = true;
      break;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      out.trace.truncated = true;
      break;
    }
    tau += dtau;
    record();
  }
  const int n = static_cast<int>(out.first_integral.size());
  if (n > 1) {
    std::vector<double> cum(n);
    cumulative_integral(out.first_integral.data(), n, dtau, cum.data());
    out.length = cum.back();
  }
  return out;
}

std::vector<double> reparam_solve(const std::vector<double>& sigma, double dt,
                                  double tau0, double taudot0) {
  const int n = static_cast<int>(sigma.size());
  std::vector<double> rate(n), out(n);
  for (int i = 0; i < n; ++i)
    rate[i] = taudot0 * std::exp(sigma[i] - sigma[0]);
  cumulative_integral(rate.data(), n, dt, out.data());
  for (int i = 0; i < n; ++i) out[i] += tau0;
  return out;
}

}  // namespace matgeo
