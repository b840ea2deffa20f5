#include "matgeo/metric.hpp"

namespace matgeo {

MetricJets Metric2::eval(const Point2& p) const {
  MetricJets m;
  m.a[0][0] = a11_.eval(p);
  m.a[0][1] = a12_.eval(p);
  m.a[1][0] = m.a[0][1];
  m.a[1][1] = a22_.eval(p);
  m.det = m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[0][1];
  if (!(m.a[0][0].v > 0.0) || !(m.det.v > 1e-14))
    throw FieldError("metric is not positive definite at the point");
  const Jet inv_det = recip(m.det);
  m.inv[0][0] = m.a[1][1] * inv_det;
  m.inv[0][1] = -m.a[0][1] * inv_det;
  m.inv[1][0] = m.inv[0][1];
  m.inv[1][1] = m.a[0][0] * inv_det;
  m.sqrt_det = sqrt(m.det);
  return m;
}

}  // namespace matgeo
