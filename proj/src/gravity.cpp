#include "matgeo/gravity.hpp"

#include <algorithm>
#include <cmath>

#include "matgeo/quadrature.hpp"

namespace matgeo {

Couplings::Couplings(double sigma_, double mu_, double lambda_)
    : sigma(sigma_), mu(mu_), lambda(lambda_) {
  if (!(sigma > 0.0) || !(mu > 0.0) || !(lambda >= 0.0))
    throw FieldError("couplings require sigma > 0, mu > 0, lambda >= 0");
}

double Couplings::l0() const { return std::sqrt(l0_sq()); }

double lagrangian(double R, double T, const Couplings& c) {
  return 0.25 * (c.sigma * R * R + 2.0 * c.mu * T * T) + c.lambda;
}

// ---------------------------------------------------------------------------

ConformalGaugeState::ConformalGaugeState(ScalarField2 phi, ScalarField2 aux,
                                         Couplings c)
    : phi_(std::move(phi)), aux_(std::move(aux)), c_(c) {}

Metric2 ConformalGaugeState::chart_metric() const {
  return Metric2::conformal(phi_ * (-1.0));
}

Metric2 ConformalGaugeState::scaled_metric() const {
  return Metric2::conformal(ScalarField2::constant(std::log(c_.l0())) - phi_);
}

VectorField2 ConformalGaugeState::torsion_covector() const {
  return VectorField2{deriv(aux_, 1), deriv(aux_, 2)};
}

Connection2 ConformalGaugeState::connection() const {
  // The variational theory pairs the potential's gradient with the opposite
  // covector orientation of the flatness machinery.
  return Connection2::vectorial(
      scaled_metric(),
      VectorField2{deriv(aux_, 1) * (-1.0), deriv(aux_, 2) * (-1.0)});
}

Jet ConformalGaugeState::zweibein(const Point2& p) const {
  return exp(phi_.eval(p) * (-1.0)) * c_.l0();
}

std::array<Jet, 2> ConformalGaugeState::spin_covector(const Point2& p) const {
  const Jet psi = phi_.eval(p) + aux_.eval(p);
  return {deriv(psi, 2) * (-1.0), deriv(psi, 1)};
}

std::array<double, 2> ConformalGaugeState::spin_vector(const Point2& p) const {
  const auto om = spin_covector(p);
  const double f = std::exp(2.0 * phi_.eval(p).v) / c_.l0_sq();
  return {f * om[0].v, f * om[1].v};
}

double ConformalGaugeState::zweibein_defect(const Point2& p) const {
  const ConnJets g = connection().eval(p);
  const Jet e = zweibein(p);  // e^a_al = e delta^a_al
  const auto om = spin_covector(p);
  double defect = 0.0;
  // eps^{ab}: eps^{12} = +1.
  const double eps[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};
  for (int a = 0; a < 2; ++a)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        double v = (a == al) ? deriv(e, be + 1).v : 0.0;
        v -= g.G[a][be][al].v * e.v;
        for (int b = 0; b < 2; ++b)
          if (b == al) v += om[be].v * eps[a][b] * e.v;
        defect = std::max(defect, std::fabs(v));
      }
  return defect;
}

Jet ConformalGaugeState::curvature_scalar(const Point2& p) const {
  return scalar_curvature(connection(), scaled_metric(), p) * (-1.0);
}

double ConformalGaugeState::torsion_norm_sq(const Point2& p) const {
  const MetricJets m = scaled_metric().eval(p);
  const Jet a = aux_.eval(p);
  const double t[2] = {a.d1, a.d2};
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += m.inv[i][j].v * t[i] * t[j];
  return s;
}

double ConformalGaugeState::torsion_sq_reported(const Point2& p) const {
  return 2.0 * torsion_norm_sq(p);
}

// ---------------------------------------------------------------------------

double ElResidual::sup() const {
  double m = std::max(std::fabs(res1[0]), std::fabs(res1[1]));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::fabs(res2[i][j]));
  return m;
}

ElResidual el_residual(const ConformalGaugeState& s, const Point2& p) {
  const Couplings& c = s.couplings();
  const Metric2 a = s.scaled_metric();
  const Connection2 g = s.connection();
  const VectorField2 t_cov = s.torsion_covector();

  const Jet R = s.curvature_scalar(p);
  const Jet aux = s.aux().eval(p);
  const double t[2] = {aux.d1, aux.d2};
  const double tsq = s.torsion_norm_sq(p);

  ElResidual out;
  out.R = R.v;
  out.t[0] = t[0];
  out.t[1] = t[1];
  out.res1[0] = c.sigma * R.d1 + c.mu * t[0];
  out.res1[1] = c.sigma * R.d2 + c.mu * t[1];

  const auto nt = covariant_deriv_covector(g, t_cov, p);
  const MetricJets m = a.eval(p);
  out.trace = c.sigma * R.v * R.v + 2.0 * c.mu * tsq - 4.0 * c.lambda;
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      out.res2[al][be] =
          c.mu * nt[al][be].v + 0.25 * m.a[al][be].v * out.trace;
  return out;
}

// ---------------------------------------------------------------------------

double Theorem3Residual::sup() const {
  return std::max(std::max(std::fabs(r[0]), std::fabs(r[1])),
                  std::max(std::fabs(r[2]), std::fabs(r[3])));
}

Theorem3Residual conformal_system_residual(const ScalarField2& phi,
                                           const ScalarField2& f,
                                           double Lambda, const Point2& p) {
  const Jet ph = phi.eval(p);
  const Jet fj = f.eval(p);
  const double conf = std::exp(-2.0 * ph.v);
  const double f_lap = fj.d11 + fj.d22;    // 4 f_{z zbar}
  const double p_lap = ph.d11 + ph.d22;    // 4 phi_{z zbar}
  Theorem3Residual out;
  out.r[0] = f_lap + (fj.v * fj.v - Lambda) * conf;
  out.r[1] = p_lap - (fj.v * fj.v + fj.v - Lambda) * conf;
  // E = f_{zz} + f_z^2 + 2 phi_z f_z in real/imaginary components.
  const double fz_re = 0.5 * fj.d1, fz_im = -0.5 * fj.d2;
  const double pz_re = 0.5 * ph.d1, pz_im = -0.5 * ph.d2;
  const double fzz_re = 0.25 * (fj.d11 - fj.d22);
  const double fzz_im = -0.5 * fj.d12;
  out.r[2] = fzz_re + (fz_re * fz_re - fz_im * fz_im) +
             2.0 * (pz_re * fz_re - pz_im * fz_im);
  out.r[3] = fzz_im + 2.0 * fz_re * fz_im +
             2.0 * (pz_re * fz_im + pz_im * fz_re);
  return out;
}

// ---------------------------------------------------------------------------

ConformalGaugeState class1_build(const ClassISolution& sol) {
  const double Lambda = sol.c.Lambda();
  const double root = std::sqrt(Lambda);
  const double sgn = sol.sign == BranchSign::Plus ? 1.0 : -1.0;
  const double lhs = sol.a_c * sol.d_c - std::norm(sol.b_c);
  if (std::fabs(lhs - sgn * root / 4.0) > 1e-12 * std::max(1.0, root))
    throw FieldError(
        "family-(i) constants violate the branch constraint a d - |b|^2 = "
        "s sqrt(Lambda)/4");

  const ScalarField2 wr = sol.w.real_part();
  const ScalarField2 wi = sol.w.imag_part();
  // D = a |w|^2 + 2 Re(b w) + d, real by construction.
  const ScalarField2 D = (wr * wr + wi * wi) * sol.a_c +
                         (wr * sol.b_c.real() - wi * sol.b_c.imag()) * 2.0 +
                         ScalarField2::constant(sol.d_c);
  const ScalarField2 phi = log(D) - sol.w.log_deriv().real_part();
  return ConformalGaugeState(phi, ScalarField2::constant(sgn * root), sol.c);
}

// ---------------------------------------------------------------------------

namespace {

// Right-hand side of 4 h' = -[(h^2 - 2h + 2 - Lambda) e^h + A] and its
// derivatives in h.
struct OdeRhs {
  double Lambda, A;
  double g(double h) const {
    return -0.25 * ((h * h - 2.0 * h + 2.0 - Lambda) * std::exp(h) + A);
  }
  double g1(double h) const {
    return -0.25 * (h * h - Lambda) * std::exp(h);
  }
  double g2(double h) const {
    return -0.25 * (h * h + 2.0 * h - Lambda) * std::exp(h);
  }
  double g3(double h) const {
    return -0.25 * (h * h + 4.0 * h + 2.0 - Lambda) * std::exp(h);
  }
};

double rk4_step(const OdeRhs& rhs, double h, double step) {
  const double k1 = rhs.g(h);
  const double k2 = rhs.g(h + 0.5 * step * k1);
  const double k3 = rhs.g(h + 0.5 * step * k2);
  const double k4 = rhs.g(h + step * k3);
  return h + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

ClassIISolution::ClassIISolution(Couplings c, double A, double h0,
                                 HolomorphicField w, double xi_min,
                                 double xi_max, double xi0, double max_step)
    : c_(c), A_(A), w_(std::move(w)) {
  if (!(xi_min <= xi0 && xi0 <= xi_max))
    throw FieldError("family-(ii) range must contain the initial point");
  const OdeRhs rhs{c_.Lambda(), A_};
  if (!(rhs.g(h0) > 0.0))
    throw FieldError("family-(ii) initial value has h' <= 0");

  auto sweep = [&](double target, std::vector<double>* xs,
                   std::vector<double>* hs) {
    const double span = std::fabs(target - xi0);
    const int n = std::max(1, static_cast<int>(std::ceil(span / max_step)));
    const double step = (target - xi0) / n;
    double h = h0;
    for (int i = 1; i <= n; ++i) {
      h = rk4_step(rhs, h, step);
      if (!(rhs.g(h) > 0.0))
        throw FieldError("family-(ii) solution left its validity range "
                         "(h' <= 0)");
      xs->push_back(xi0 + i * step);
      hs->push_back(h);
    }
  };

  std::vector<double> xl, hl, xr, hr;
  if (xi_min < xi0) sweep(xi_min, &xl, &hl);
  if (xi_max > xi0) sweep(xi_max, &xr, &hr);
  for (size_t i = xl.size(); i-- > 0;) {
    xi_.push_back(xl[i]);
    h_.push_back(hl[i]);
  }
  xi_.push_back(xi0);
  h_.push_back(h0);
  for (size_t i = 0; i < xr.size(); ++i) {
    xi_.push_back(xr[i]);
    h_.push_back(hr[i]);
  }
  hp_.resize(h_.size());
  for (size_t i = 0; i < h_.size(); ++i) hp_[i] = rhs.g(h_[i]);
}

double ClassIISolution::hermite(double xi, double* slope) const {
  if (xi < xi_.front() - 1e-12 || xi > xi_.back() + 1e-12)
    throw FieldError("family-(ii) evaluation outside the tabulated range");
  xi = std::clamp(xi, xi_.front(), xi_.back());
  size_t k = std::upper_bound(xi_.begin(), xi_.end(), xi) - xi_.begin();
  if (k == 0) k = 1;
  if (k == xi_.size()) k = xi_.size() - 1;
  const double x0 = xi_[k - 1], x1 = xi_[k];
  const double d = x1 - x0;
  const double t = (xi - x0) / d;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  const double v = h00 * h_[k - 1] + h10 * d * hp_[k - 1] + h01 * h_[k] +
                   h11 * d * hp_[k];
  if (slope) {
    const double g00 = 6.0 * t * (t - 1.0);
    const double g10 = (1.0 - t) * (1.0 - 3.0 * t);
    const double g01 = -g00;
    const double g11 = t * (3.0 * t - 2.0);
    *slope = (g00 * h_[k - 1] + g01 * h_[k]) / d + g10 * hp_[k - 1] +
             g11 * hp_[k];
  }
  return v;
}

std::array<double, 5> ClassIISolution::h_derivs(double xi) const {
  const OdeRhs rhs{c_.Lambda(), A_};
  const double h = hermite(xi, nullptr);
  const double g = rhs.g(h), g1 = rhs.g1(h), g2 = rhs.g2(h), g3 = rhs.g3(h);
  return {h, g, g1 * g,
          g2 * g * g + g1 * g1 * g,
          g3 * g * g * g + 4.0 * g2 * g1 * g * g + g1 * g1 * g1 * g};
}

double ClassIISolution::ode_residual(double xi) const {
  double slope = 0.0;
  const double h = hermite(xi, &slope);
  return std::fabs(4.0 * slope +
                   (h * h - 2.0 * h + 2.0 - c_.Lambda()) * std::exp(h) + A_);
}

ScalarField2 ClassIISolution::f_field() const {
  auto self = *this;
  const ScalarField2 re = w_.real_part();
  return ScalarField2::from_function([self, re](const Point2& p) {
    const Jet xi = re.eval(p) * 2.0;
    const auto d = self.h_derivs(xi.v);
    return compose(xi, d[0], d[1], d[2], d[3]);
  });
}

ScalarField2 ClassIISolution::phi_field() const {
  auto self = *this;
  const ScalarField2 re = w_.real_part();
  const ScalarField2 lnwp = w_.log_deriv().real_part();
  return ScalarField2::from_function([self, re, lnwp](const Point2& p) {
    const Jet xi = re.eval(p) * 2.0;
    const auto d = self.h_derivs(xi.v);
    const OdeRhs rhs{self.c_.Lambda(), self.A_};
    const double g = d[1], g1 = rhs.g1(d[0]), g2 = rhs.g2(d[0]),
                 g3 = rhs.g3(d[0]);
    // u = ln h': u' = g1, u'' = g2 g, u''' = g3 g^2 + g2 g1 g.
    const Jet lnhp =
        compose(xi, std::log(g), g1, g2 * g, g3 * g * g + g2 * g1 * g);
    const Jet hj = compose(xi, d[0], d[1], d[2], d[3]);
    return (lnhp + hj) * (-0.5) - lnwp.eval(p);
  });
}

ConformalGaugeState ClassIISolution::state() const {
  return ConformalGaugeState(phi_field(), f_field(), c_);
}

double metric_from_torsion_check(const ClassIISolution& sol,
                                 const ConformalGaugeState& s,
                                 const Point2& p) {
  const double conf = std::exp(-2.0 * s.phi().value(p));
  const double tsq = s.torsion_sq_reported(p);
  const double l0sq = s.couplings().l0_sq();
  const auto d = sol.w().eval(cplx(p.x, p.y));
  const double xi = 2.0 * d.w.real();
  const double h = sol.h(xi);
  return conf - tsq * l0sq / 8.0 * std::exp(2.0 * h) * std::norm(d.dw);
}

// ---------------------------------------------------------------------------

ConstantCase constant_case_invariants(const Couplings& c) {
  const double r0 = c.mu / c.sigma * std::sqrt(c.Lambda());
  ConstantCase out;
  out.R0_plus = r0;
  out.R0_minus = -r0;
  out.identity_defect = std::fabs(r0 * r0 - 4.0 * c.lambda / c.sigma);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ActionReport assemble_report(const ConformalGaugeState& s,
                             const std::function<double(
                                 const std::function<double(const Point2&)>&)>&
                                 integrate) {
  const Metric2 chart = s.chart_metric();
  auto weight = [&](const Point2& p) {
    return chart.eval(p).sqrt_det.v;
  };
  ActionReport out;
  out.area = integrate(weight);
  out.gauss_bonnet = integrate([&](const Point2& p) {
    return weight(p) * gauss_curvature(chart, p);
  });
  const double intR = integrate([&](const Point2& p) {
    return weight(p) * s.curvature_scalar(p).v;
  });
  out.action = integrate([&](const Point2& p) {
    const double R = s.curvature_scalar(p).v;
    const double T = std::sqrt(std::max(0.0, s.torsion_sq_reported(p)));
    return weight(p) * lagrangian(R, T, s.couplings());
  });
  out.mean_R = intR / out.area;
  out.r0_times_area = intR;
  const double pi = 3.14159265358979323846;
  out.chi_disk = out.gauss_bonnet / (2.0 * pi);
  out.chi_sphere = out.gauss_bonnet / (4.0 * pi);
  return out;
}

}  // namespace

ActionReport action_eval(const ConformalGaugeState& s, const RectGrid& grid) {
  return assemble_report(s, [&](const std::function<double(const Point2&)>& f) {
    return simpson_rect(f, grid);
  });
}

ActionReport action_eval_plane(const ConformalGaugeState& s, double radius,
                               int nr, int ntheta) {
  return assemble_report(
      s, [&](const std::function<double(const Point2&)>& f) {
        const double i1 = simpson_disk(f, {0.0, 0.0, radius, nr, ntheta});
        const double i2 =
            simpson_disk(f, {0.0, 0.0, 2.0 * radius, 2 * nr, ntheta});
        return (4.0 * i2 - i1) / 3.0;  // removes the O(1/R^2) tail
      });
}

// ---------------------------------------------------------------------------

CurvatureFactorization katanaev_scalar(const ConformalGaugeState& s,
                                       const Point2& p) {
  const auto om = s.spin_covector(p);
  const MetricJets m = s.scaled_metric().eval(p);
  const double sqrta = m.sqrt_det.v;
  // R = -2 e^{al be} d_al omega_be with e^{12} = 1/sqrt(a).
  const double R = -2.0 * (om[1].d1 - om[0].d2) / sqrta;

  CurvatureFactorization out;
  out.R = R;
  const Jet aux = s.aux().eval(p);
  out.t[0] = aux.d1;
  out.t[1] = aux.d2;
  out.scalar_defect = std::fabs(R - s.curvature_scalar(p).v);

  // Reassembly R_{k al be s} = (R/2) e_{k al} e_{be s}, e_{al be} =
  // sqrt(a) eps_{al be}, against the curvature tensor of the connection.
  const CurvatureData cur = curvature_of(s.connection(), p);
  const double eps[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};
  double defect = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        for (int sg = 0; sg < 2; ++sg) {
          double low = 0.0;
          for (int nu = 0; nu < 2; ++nu)
            low += cur.R[k][al][be][nu].v * m.a[nu][sg].v;
          const double model = 0.5 * R * (sqrta * eps[k][al]) *
                               (sqrta * eps[be][sg]);
          defect = std::max(defect, std::fabs(low - model));
        }
  out.factorization_defect = defect;
  return out;
}

}  // namespace matgeo
