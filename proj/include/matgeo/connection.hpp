#pragma once

#include <functional>
#include <memory>

#include "matgeo/metric.hpp"

namespace matgeo {

// Pointwise Taylor data of a connection: G[k][al][be] holds the coefficient
// with upper index k, differentiation index al, transported index be
// (nabla_al d_be = G^k_{al be} d_k).
struct ConnJets {
  Jet G[2][2][2];
};

// Third-rank pointwise tensor; index meaning is documented at each use.
struct Tens3 {
  Jet c[2][2][2];
};

// Distortion field: c[al][be][k] is the difference tensor Q_{al be}^k added
// to the Levi-Civita coefficients.
using TensorField3 = std::function<Tens3(const Point2&)>;

// Affine connection on a plane domain.  The coefficients are produced with
// exact first and second derivative data (they sit one differentiation below
// the third-order metric/field data they are assembled from).
class Connection2 {
 public:
  using EvalFn = std::function<ConnJets(const Point2&)>;

  static Connection2 from_function(EvalFn fn) {
    return Connection2(std::move(fn));
  }
  // Coefficients given directly as scalar fields, comps[k][al][be].
  static Connection2 from_fields(const ScalarField2 comps[2][2][2]);
  static Connection2 levi_civita(const Metric2& a);
  // Gamma = LC(a) + Q with Q_{al be}^k supplied as a distortion field.
  static Connection2 with_distortion(const Metric2& a, TensorField3 q);
  // Metric connection whose torsion is the vectorial form built from the
  // covector t: Gamma = LC(a) + t_be delta^k_al - t^k a_{al be}.
  static Connection2 vectorial(const Metric2& a, const VectorField2& t_cov);
  // Frame connection of teleparallelism: Gamma^g_{al be} = e_c^g d_al e^c_be.
  static Connection2 teleparallel(const VectorField2& e1,
                                  const VectorField2& e2);

  ConnJets eval(const Point2& p) const { return (*fn_)(p); }
  // Coefficient (k, al, be) exposed as a scalar field.
  ScalarField2 component(int k, int al, int be) const;

 private:
  explicit Connection2(EvalFn fn)
      : fn_(std::make_shared<EvalFn>(std::move(fn))) {}
  std::shared_ptr<const EvalFn> fn_;
};

// Pointwise Levi-Civita coefficients from metric data.
ConnJets levi_civita_jets(const MetricJets& m);

}  // namespace matgeo
