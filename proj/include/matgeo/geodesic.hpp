#pragma once

#include <vector>

#include "matgeo/geometry.hpp"
#include "matgeo/holomorphic.hpp"

namespace matgeo {

struct GeodesicState {
  double s = 0.0;  // curve parameter
  Point2 pos{0.0, 0.0};
  double vel[2] = {1.0, 0.0};
};

struct GeodesicTrace {
  std::vector<GeodesicState> samples;
  bool truncated = false;  // integration left the field domain early
};

// Classic fourth-order one-step integration of
//   d^2 x^k / ds^2 + G^k_{(al be)} v^al v^be = 0.
// With `symmetric_only` the coefficients are explicitly symmetrized first;
// the contraction with v v makes both variants agree identically.
GeodesicTrace integrate_geodesic(const Connection2& c,
                                 const GeodesicState& init, int steps,
                                 double ds, bool symmetric_only = false);

// Metric speed |v|_a at each sample.
std::vector<double> metric_speeds(const Metric2& a, const GeodesicTrace& tr);

// Reparametrization s(t) = s0 + c * integral dt / h(t) removing a
// pregeodesic factor h > 0; velocities are rescaled by h / c.  The input
// samples are assumed uniformly spaced in their own parameter.
GeodesicTrace natural_parameter(const GeodesicTrace& tr,
                                const std::vector<double>& h, double s0,
                                double c);

// Samples of u^al u^nu u^sg W_{al nu sg} along a trace (obstruction to the
// metric arclength being an affine parameter).
std::vector<double> affine_consistency(const Connection2& c, const Metric2& a,
                                       const GeodesicTrace& tr);

// Complex form of the geodesic equation on a conformal metric
// e^{-2 phi} dz dzbar:  z'' = 2 phi_z (z')^2.  The conserved diagnostic is
// |z'| e^{-phi}; `length` accumulates the metric length of the trace.
struct ConformalTrace {
  GeodesicTrace trace;
  std::vector<double> first_integral;
  double length = 0.0;
};

ConformalTrace conformal_geodesic(const ScalarField2& phi, cplx z0, cplx v0,
                                  int steps, double dtau);

// Parameter transform tau(t) with taudot = taudot0 e^{sigma(t) - sigma(0)},
// for uniformly spaced samples of sigma along a geodesic.
std::vector<double> reparam_solve(const std::vector<double>& sigma, double dt,
                                  double tau0, double taudot0);

}  // namespace matgeo
