#pragma once

#include <array>
#include <vector>

#include "matgeo/connection.hpp"

namespace matgeo {

// ---------------------------------------------------------------------------
// Torsion

struct TorsionData {
  Jet S[2][2][2];   // S_{al be}^k = Gamma^k_{[al be]}
  Jet T[2][2][2];   // T = 2 S
  Jet trace_tk[2];  // t_al = T_{al k}^k   (second-slot trace)
  Jet trace_kt[2];  // t_al = T_{s al}^s   (first-slot trace)
};

TorsionData torsion_of(const Connection2& c, const Point2& p);

// ---------------------------------------------------------------------------
// Nonmetricity and its decomposition

struct NonmetricityData {
  Jet W[2][2][2];    // W_{al be}^k = -a^{k s} nabla_al a_{be s}
  Jet Wlow[2][2][2];  // W_{al nu s} (all indices down)
  Jet weyl[2];        // w_al with W_{al nu s} = P_{al nu s} - a_{nu s} w_al
  Jet P[2][2][2];     // traceless part, all indices down
};

NonmetricityData nonmetricity_of(const Connection2& c, const Metric2& a,
                                 const Point2& p);

// Contorsion / nonmetricity halves of the distortion and their sum.
struct DistortionData {
  Jet K[2][2][2];  // contorsion, all indices down
  Jet V[2][2][2];  // nonmetricity half, all indices down
  Jet Q[2][2][2];  // K + V, all indices down
};

DistortionData distortion_of(const Connection2& c, const Metric2& a,
                             const Point2& p);

// ---------------------------------------------------------------------------
// Curvature

struct CurvatureData {
  Jet R[2][2][2][2];  // R_{k al be}^nu stored as R[k][al][be][nu]
  Jet ricci[2][2];    // R_{al be} = R_{k al be}^k
};

CurvatureData curvature_of(const Connection2& c, const Point2& p);
Jet scalar_curvature(const Connection2& c, const Metric2& a, const Point2& p);
// Gauss curvature from the Levi-Civita curvature of the metric alone,
// normalized so the round sphere comes out positive.
double gauss_curvature(const Metric2& a, const Point2& p);

// ---------------------------------------------------------------------------
// Covariant derivatives (pointwise, with first-derivative data where the
// inputs permit)

// nabla_al u^k for a (contravariant) vector field.
std::array<std::array<Jet, 2>, 2> covariant_deriv_vector(
    const Connection2& c, const VectorField2& u, const Point2& p);
// nabla_al w_be for a covector field.
std::array<std::array<Jet, 2>, 2> covariant_deriv_covector(
    const Connection2& c, const VectorField2& w, const Point2& p);
// sup over components of nabla_al a_{be s} at p.
double metric_compatibility_defect(const Connection2& c, const Metric2& a,
                                   const Point2& p);

// ---------------------------------------------------------------------------
// Closure defects and volume behaviour

// Burgers-circuit defect db^k = eps S_{al be}^k df^{al be} for a small
// oriented cell of antisymmetric area component df12.
std::array<double, 2> pentagon_closure(const Connection2& c, const Point2& p,
                                       double eps, double df12);
// Holonomy defect dv^k = -1/2 R_{s m l}^k v^l df^{s m} for the same cell.
std::array<double, 2> holonomy_defect(const Connection2& c, const Point2& p,
                                      const std::array<double, 2>& v,
                                      double df12);
// Independent discrete oracle: parallel transport of v around the boundary
// of the square cell [p, p+h]^2, returning the change of v.
std::array<double, 2> loop_transport_defect(const Connection2& c,
                                            const Point2& p,
                                            const std::array<double, 2>& v,
                                            double h, int steps_per_side);

// Divergence with respect to the volume form omega = e^psi omega_a
// (Lie-derivative definition, evaluated exactly through the field data).
double div_omega(const Metric2& a, const ScalarField2& psi,
                 const VectorField2& w, const Point2& p);
// Riemannian divergence, psi = 0.
double div_metric(const Metric2& a, const VectorField2& w, const Point2& p);

// Residual of the divergence decomposition
//   nabla_al w^al = div_omega w + t(w) - v(w) - w(psi)
// returned as |lhs - rhs| at p, using the first-slot torsion trace.
double divergence_identity_defect(const Connection2& c, const Metric2& a,
                                  const ScalarField2& psi,
                                  const VectorField2& w, const Point2& p);

// Compatibility residuals t_al - v_al - d_al psi for both sign conventions
// of the torsion trace.  `winner` is +1 when the second-slot trace
// (t_al = T_{al k}^k) gives the smaller residual, -1 otherwise.
struct VolumeCompatibility {
  double residual_second_slot;
  double residual_first_slot;
  int winner;
};

VolumeCompatibility volume_compatibility(const Connection2& c,
                                         const Metric2& a,
                                         const ScalarField2& psi,
                                         const std::vector<Point2>& pts);

// ---------------------------------------------------------------------------
// Canonical transform: a -> e^{-2 sigma} a, Gamma -> Gamma - (d_al sigma)
// delta^k_be.  Requires a metric-compatible input pair.
struct CanonicalPair {
  Metric2 metric;
  Connection2 connection;
};

CanonicalPair canonical_transform(const Metric2& a, const Connection2& c,
                                  const ScalarField2& sigma,
                                  const std::vector<Point2>& check_pts,
                                  double compat_tol = 1e-8);

// ---------------------------------------------------------------------------
// Identity residuals (exact consequences of the definitions; useful as
// wiring checks for arbitrary connections)

// Two-dimensional curvature decomposition:
//   R_{al mu la}^k = delta^k_al R_{mu la} - delta^k_mu R_{al la}.
double curvature_decomposition_defect(const Connection2& c, const Point2& p);

// Commutator of second covariant derivatives on a scalar:
//   (nabla_be nabla_al - nabla_al nabla_be) f = T_{al be}^la d_la f.
double commutator_scalar_defect(const Connection2& c, const ScalarField2& f,
                                const Point2& p);

// Same for a vector field, with the curvature action added on the right.
double commutator_vector_defect(const Connection2& c, const VectorField2& u,
                                const Point2& p);

// Rebuild the connection from Levi-Civita plus the raised distortion and
// report the sup difference against the original coefficients.
double distortion_roundtrip_defect(const Connection2& c, const Metric2& a,
                                   const Point2& p);

// ---------------------------------------------------------------------------
// Frames and densities

// Orthonormal frame at a point (Gram-Schmidt on the coordinate frame):
// rows are e_1, e_2 with a(e_a, e_b) = delta_ab.
std::array<std::array<double, 2>, 2> orthonormal_frame(const Metric2& a,
                                                       const Point2& p);

}  // namespace matgeo
