#pragma once

#include "matgeo/field.hpp"

namespace matgeo {

// Pointwise Taylor data of a metric: components, inverse, determinant.
struct MetricJets {
  Jet a[2][2];
  Jet inv[2][2];
  Jet det;
  Jet sqrt_det;
};

// Symmetric positive-definite metric on a plane domain, with components
// given as scalar fields.
class Metric2 {
 public:
  Metric2(ScalarField2 a11, ScalarField2 a12, ScalarField2 a22)
      : a11_(std::move(a11)), a12_(std::move(a12)), a22_(std::move(a22)) {}

  static Metric2 euclidean() {
    return Metric2(ScalarField2::constant(1.0), ScalarField2::constant(0.0),
                   ScalarField2::constant(1.0));
  }
  // a = e^{2 s} delta for a scalar field s.
  static Metric2 conformal(const ScalarField2& s) {
    ScalarField2 c = exp(2.0 * s);
    return Metric2(c, ScalarField2::constant(0.0), c);
  }

  MetricJets eval(const Point2& p) const;

  const ScalarField2& a11() const { return a11_; }
  const ScalarField2& a12() const { return a12_; }
  const ScalarField2& a22() const { return a22_; }

 private:
  ScalarField2 a11_, a12_, a22_;
};

}  // namespace matgeo
