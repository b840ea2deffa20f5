#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matgeo/geometry.hpp"
#include "matgeo/grid.hpp"

namespace matgeo {

// ---------------------------------------------------------------------------
// Frames

struct Frame2 {
  VectorField2 e1;  // contravariant components
  VectorField2 e2;

  static Frame2 coordinate() {
    return {{ScalarField2::constant(1.0), ScalarField2::constant(0.0)},
            {ScalarField2::constant(0.0), ScalarField2::constant(1.0)}};
  }
};

struct FrameJets {
  Jet e[2][2];   // e[a][k] = e_a^k
  Jet co[2][2];  // co[c][k] = e^c_k, the dual coframe
  Jet det;       // det(e_a^k)
};

FrameJets frame_jets(const Frame2& f, const Point2& p);

// Object of anholonomy C^c_{ab} = e^c([e_a, e_b]).
struct AnholonomyData {
  Jet C[2][2][2];  // C[c][a][b]
  Jet bracket[2];  // [e_1, e_2]^k
};

AnholonomyData anholonomy_of(const Frame2& f, const Point2& p);

// Frame rotation by the angle field theta.
Frame2 rotate_frame(const Frame2& f, const ScalarField2& theta);

// ---------------------------------------------------------------------------
// Dislocation fields

struct DislocationField {
  VectorField2 b;    // local Burgers vector (contravariant), carries cm
  ScalarField2 rho;  // scalar line density, carries cm^-2
  int eps = +1;      // orientation sign
};

// b from rho * b = [e_1, e_2]; validates Definition-1 constraints lazily at
// evaluation points.
DislocationField burgers_from_frame(const Frame2& e, const ScalarField2& rho,
                                    int eps);

// Recovers the covector t of a vectorial anholonomy C^c_{ab} = t_b delta^c_a
// - t_a delta^c_b, together with the residual of that form.
struct VectorialAnholonomy {
  double t[2];
  double residual;
};
VectorialAnholonomy vectorial_anholonomy(const Frame2& e, const Point2& p);

// ---------------------------------------------------------------------------
// Flatness machinery for vectorial torsion

// Right side of the torsion representation of the Levi-Civita curvature
// action (vectors u, v, w given at p; t is the torsion covector field).
struct FlatCurvatureResult {
  std::array<double, 2> rhs;        // formula value
  std::array<double, 2> lc_action;  // R^a(u,v)w of the Levi-Civita connection
  double flat_defect;               // sup |curvature| of the (a,t) connection
  bool applicable;                  // flat_defect below tolerance
};

FlatCurvatureResult flat_curvature_rhs(const Metric2& a,
                                       const VectorField2& t_cov,
                                       const std::array<double, 2>& u,
                                       const std::array<double, 2>& v,
                                       const std::array<double, 2>& w,
                                       const Point2& p, double tol = 1e-7);

// K(p) - div_a t(p); vanishes exactly where the vectorial connection built
// from (a, t) is flat.
double flatness_defect(const Metric2& a, const VectorField2& t_cov,
                       const Point2& p);

// ---------------------------------------------------------------------------
// Laplace-Beltrami Poisson solve (conservative second-order scheme,
// Dirichlet boundary), for the flat-potential equation Delta_a phi = K.

struct PoissonResult {
  RectGrid grid;
  std::vector<double> phi;  // row-major, phi[j * nx + i]
  int iterations = 0;
  double residual = 0.0;  // relative linear residual

  double at(int i, int j) const { return phi[j * grid.nx + i]; }
};

PoissonResult solve_flat_potential(const Metric2& a, const RectGrid& grid,
                                   const ScalarField2& boundary,
                                   double tol = 1e-10,
                                   long max_iter = 1000000);

// Same solver with a caller-supplied source field (Delta_a phi = source).
PoissonResult solve_laplace_beltrami(const Metric2& a, const RectGrid& grid,
                                     const ScalarField2& source,
                                     const ScalarField2& boundary,
                                     double tol = 1e-10,
                                     long max_iter = 1000000);

// ---------------------------------------------------------------------------
// Congruences of effective dislocation lines

struct LineCongruence {
  std::vector<std::vector<Point2>> lines;
  std::vector<bool> truncated;  // left the domain before finishing
};

LineCongruence line_congruence(const DislocationField& d, const Metric2& a,
                               const std::vector<Point2>& seeds, double step,
                               int n_steps, const Domain& domain);

// Unit direction a-orthogonal to b at p (deterministic sign rule: first
// component >= 0, ties broken by second component > 0).
std::array<double, 2> congruence_direction(const DislocationField& d,
                                           const Metric2& a, const Point2& p);

// ---------------------------------------------------------------------------
// Balance / thermal-state residuals

// residual_b = div_a e_b - t_b, t_b = C_{ab}^a; requires an a-orthonormal
// frame at p.
std::array<double, 2> self_balance_residual(const Frame2& e, const Metric2& a,
                                            const Point2& p,
                                            double ortho_tol = 1e-8);

struct IsothermalResult {
  double residual;  // div_a w + 2K - r
  double F12;       // d_1 eps_2 - d_2 eps_1 with eps = w/2
};

IsothermalResult isothermal_residual(const Metric2& a,
                                     const VectorField2& w_cov, double r,
                                     const Point2& p);

// ---------------------------------------------------------------------------
// Teleparallelism diagnostics

enum class FrameClass { Commutative, ConstantStructure, Varying };

struct TeleparallelReport {
  double structure_spread;  // max over components of (max - min) on the grid
  double jacobi_residual;   // sup of the Jacobi identity defect
  FrameClass classification;
};

TeleparallelReport closed_teleparallelism_check(const Frame2& e,
                                                const RectGrid& grid,
                                                double const_tol = 1e-10);

// ---------------------------------------------------------------------------
// Counting

struct CountResult {
  double value;
  double error_estimate;
  bool zero_density_warning = false;
};

// integral of rho * sqrt(det a) over a rectangle.
CountResult dislocation_count(const ScalarField2& rho, const Metric2& a,
                              const RectGrid& grid);
// Improper plane integral: disk quadrature with a radius sweep and one
// Richardson step assuming an O(1/R^2) tail.
CountResult dislocation_count_plane(const ScalarField2& rho, const Metric2& a,
                                    double radius, int nr, int ntheta);

}  // namespace matgeo
