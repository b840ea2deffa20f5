#pragma once

#include <vector>

#include "matgeo/geometry.hpp"
#include "matgeo/grid.hpp"
#include "matgeo/holomorphic.hpp"

namespace matgeo {

// ---------------------------------------------------------------------------
// Couplings of the quadratic curvature+torsion functional
//   L = 1/4 (sigma R^2 + 2 mu T^2) + lambda.
// The derived length l0 = sqrt(2 sigma / mu) absorbs the dimensions; the one
// remaining dimensionless constant is Lambda = 4 lambda sigma / mu^2.

struct Couplings {
  double sigma = 1.0;
  double mu = 1.0;
  double lambda = 0.0;

  Couplings(double sigma_, double mu_, double lambda_);

  double l0_sq() const { return 2.0 * sigma / mu; }
  double l0() const;
  double Lambda() const { return 4.0 * lambda * sigma / (mu * mu); }
};

double lagrangian(double R, double T, const Couplings& c);

// ---------------------------------------------------------------------------
// Conformal-gauge state: chart metric a = e^{-2 phi} delta (dimensionless
// coordinates), torsion potential `aux` (the covector of the vectorial
// torsion is d aux), couplings.  The geometric objects handed out use the
// dimensionful metric l0^2 e^{-2 phi} delta.

class ConformalGaugeState {
 public:
  ConformalGaugeState(ScalarField2 phi, ScalarField2 aux, Couplings c);

  const ScalarField2& phi() const { return phi_; }
  const ScalarField2& aux() const { return aux_; }
  const Couplings& couplings() const { return c_; }

  Metric2 chart_metric() const;   // e^{-2 phi} delta
  Metric2 scaled_metric() const;  // l0^2 e^{-2 phi} delta
  VectorField2 torsion_covector() const;  // (d1 aux, d2 aux)
  Connection2 connection() const;  // metric connection with vectorial torsion

  // Zweibein of the scaled metric: e^a_al = l0 e^{-phi} delta^a_al.
  Jet zweibein(const Point2& p) const;
  // Spin-connection coefficient omega_al (the single independent component
  // of omega_al^{ab} in two dimensions) and the raised vector omega^al.
  std::array<Jet, 2> spin_covector(const Point2& p) const;
  std::array<double, 2> spin_vector(const Point2& p) const;
  // Defect of the zweibein relation
  //   d_be e^a_al - Gamma^k_{be al} e^a_k + omega_be^{ab} e_{b al} = 0
  // (sup over components).
  double zweibein_defect(const Point2& p) const;

  // Scalar curvature in the convention of the functional (negative of the
  // Ricci contraction of the vectorial-torsion connection on the scaled
  // metric) and the torsion-square diagnostics.
  Jet curvature_scalar(const Point2& p) const;
  double torsion_norm_sq(const Point2& p) const;    // a^{al be} t_al t_be
  double torsion_sq_reported(const Point2& p) const;  // full square = 2 |t|^2

 private:
  ScalarField2 phi_;
  ScalarField2 aux_;
  Couplings c_;
};

// ---------------------------------------------------------------------------
// Euler-Lagrange residuals of the functional at a point:
//   res1_al     = sigma grad_al R + mu t_al
//   res2_{al be} = mu nabla_al t_be
//                  + 1/4 a_{al be} (sigma R^2 + 2 mu |t|^2 - 4 lambda).

struct ElResidual {
  double res1[2];
  double res2[2][2];
  double R;      // scalar curvature diagnostic
  double t[2];   // torsion covector
  double trace;  // sigma R^2 + 2 mu |t|^2 - 4 lambda

  double sup() const;
};

ElResidual el_residual(const ConformalGaugeState& s, const Point2& p);

// ---------------------------------------------------------------------------
// Residuals of the reduced conformal-gauge system for (phi, f):
//   r[0]: 4 f_{z zbar} + (f^2 - Lambda) e^{-2 phi}
//   r[1]: 4 phi_{z zbar} - (f^2 + f - Lambda) e^{-2 phi}
//   r[2], r[3]: real and imaginary part of f_{zz} + f_z^2 + 2 phi_z f_z.

struct Theorem3Residual {
  double r[4];
  double sup() const;
};

Theorem3Residual conformal_system_residual(const ScalarField2& phi,
                                           const ScalarField2& f,
                                           double Lambda, const Point2& p);

// ---------------------------------------------------------------------------
// Solution family (i): constant torsion potential f = s sqrt(Lambda),
//   e^{-2 phi} = w' wbar' / (a_c w wbar + b_c w + bbar_c wbar + d_c)^2,
// subject to a_c d_c - |b_c|^2 = s sqrt(Lambda) / 4.  The branch enum is
// explicit; `Minus` is the branch with a_c d_c - |b_c|^2 < 0.

enum class BranchSign { Plus, Minus };

struct ClassISolution {
  BranchSign sign = BranchSign::Plus;
  double a_c = 1.0;
  double d_c = 1.0;
  cplx b_c = 0.0;
  HolomorphicField w = HolomorphicField::identity();
  Couplings c{1.0, 1.0, 0.0};
};

ConformalGaugeState class1_build(const ClassISolution& sol);

// ---------------------------------------------------------------------------
// Solution family (ii): f = h(xi), xi = w + wbar, where h solves
//   4 h' = -[(h^2 - 2 h + 2 - Lambda) e^h + A],  h' > 0,
// and e^{-2 phi} = h' w' wbar' e^h.  The table is built once by a
// fourth-order one-step method with cubic-Hermite dense output; derivatives
// of h are recovered analytically from the right-hand side.

class ClassIISolution {
 public:
  // Integrates over [xi_min, xi_max] starting from h(xi0) = h0.
  ClassIISolution(Couplings c, double A, double h0,
                  HolomorphicField w, double xi_min, double xi_max,
                  double xi0 = 0.0, double max_step = 1.0 / 256.0);

  const Couplings& couplings() const { return c_; }
  const HolomorphicField& w() const { return w_; }
  double A() const { return A_; }

  // h and its first four derivatives at xi (Hermite value, analytic chain).
  std::array<double, 5> h_derivs(double xi) const;
  double h(double xi) const { return h_derivs(xi)[0]; }
  // |4 h' + (h^2 - 2h + 2 - Lambda) e^h + A| with h' taken from the dense
  // interpolant's own slope.
  double ode_residual(double xi) const;
  const std::vector<double>& knots() const { return xi_; }

  ScalarField2 f_field() const;
  ScalarField2 phi_field() const;
  ConformalGaugeState state() const;

 private:
  double hermite(double xi, double* slope) const;

  Couplings c_;
  double A_;
  HolomorphicField w_;
  std::vector<double> xi_, h_, hp_;
};

// Residual of the dislocation-metric relation for family (ii):
//   e^{-2 phi} - (T l0 / (2 sqrt 2))^2 e^{2h} w' wbar'
// with T the reported torsion magnitude of the state.
double metric_from_torsion_check(const ClassIISolution& sol,
                                 const ConformalGaugeState& s, const Point2& p);

// ---------------------------------------------------------------------------
// Constant-curvature diagnostics: R0 = +-(mu/sigma) sqrt(Lambda), T = 0,
// together with the identity R0^2 = 4 lambda / sigma.

struct ConstantCase {
  double R0_plus;
  double R0_minus;
  double identity_defect;  // |R0^2 - 4 lambda / sigma|
};

ConstantCase constant_case_invariants(const Couplings& c);

// ---------------------------------------------------------------------------
// Action and area report.  Quadrature of L(R, T) over the chart area form
// dF = e^{-2 phi} dx dy; also reports the Gauss curvature integral (for
// comparison with 2 pi chi under both chi = 1 and chi = 2 readings) and, for
// constant-curvature states, R0 * F.

struct ActionReport {
  double action = 0.0;
  double area = 0.0;
  double mean_R = 0.0;        // integral of R dF / F
  double gauss_bonnet = 0.0;  // integral of K dF
  double chi_disk = 0.0;      // gauss_bonnet / (2 pi)
  double chi_sphere = 0.0;    // gauss_bonnet / (4 pi)
  double r0_times_area = 0.0;
};

ActionReport action_eval(const ConformalGaugeState& s, const RectGrid& grid);
// Plane-domain version: disk quadrature at radius and 2*radius combined by
// Richardson extrapolation of the O(1/R^2) tail.
ActionReport action_eval_plane(const ConformalGaugeState& s, double radius,
                               int nr = 96, int ntheta = 96);

// ---------------------------------------------------------------------------
// Zweibein/spin-connection route to the scalar curvature, with the curvature
// factorization check R_{k al be s} = (R/2) e_{k al} e_{be s}.

struct CurvatureFactorization {
  double R;             // scalar from the spin connection
  double t[2];          // torsion covector of the state
  double scalar_defect;  // |R - curvature_scalar|
  double factorization_defect;  // sup over components of the reassembly
};

CurvatureFactorization katanaev_scalar(const ConformalGaugeState& s,
                                       const Point2& p);

}  // namespace matgeo
