#include "matgeo/holomorphic.hpp"

#include <cmath>

namespace matgeo {

HolomorphicField HolomorphicField::identity() {
  return HolomorphicField([](cplx z) {
    return Data{z, cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
  });
}

HolomorphicField HolomorphicField::affine(cplx a, cplx b) {
  if (std::abs(a) == 0.0)
    throw FieldError("affine holomorphic map requires a != 0");
  return HolomorphicField([a, b](cplx z) {
    return Data{a * z + b, a, cplx(0.0), cplx(0.0), cplx(0.0)};
  });
}

HolomorphicField HolomorphicField::exponential() {
  return HolomorphicField([](cplx z) {
    const cplx e = std::exp(z);
    return Data{e, e, e, e, e};
  });
}

HolomorphicField HolomorphicField::from_parts(const ScalarField2& re,
                                              const ScalarField2& im) {
  return HolomorphicField([re, im](cplx z) {
    const Point2 p{z.real(), z.imag()};
    const Jet u = re.eval(p);
    const Jet v = im.eval(p);
    const double tol = 1e-8;
    if (std::fabs(u.d1 - v.d2) > tol || std::fabs(u.d2 + v.d1) > tol)
      throw FieldError("field pair violates the Cauchy-Riemann relations");
    // The fourth complex derivative is not contained in the third-order
    // field data; estimate it by differencing the third along the real axis.
    const double h = 1e-4;
    const Jet up = re.eval({p.x + h, p.y});
    const Jet um = re.eval({p.x - h, p.y});
    const Jet vp = im.eval({p.x + h, p.y});
    const Jet vm = im.eval({p.x - h, p.y});
    const cplx d4((up.d111 - um.d111) / (2.0 * h),
                  (vp.d111 - vm.d111) / (2.0 * h));
    return Data{cplx(u.v, v.v), cplx(u.d1, v.d1), cplx(u.d11, v.d11),
                cplx(u.d111, v.d111), d4};
  });
}

HolomorphicValue HolomorphicField::eval(cplx z) const {
  const Data d = eval_full(z);
  return {d.w, d.dw, d.d2w};
}

HolomorphicField::Data HolomorphicField::eval_full(cplx z) const {
  const Data d = (*fn_)(z);
  if (std::abs(d.dw) < 1e-14)
    throw FieldError("holomorphic map is critical (dw = 0) at the point");
  return d;
}

namespace {

// For holomorphic w, every partial of u = Re w and v = Im w follows from the
// complex derivatives via d/dy w = i w'.
Jet real_jet(const HolomorphicField::Data& d) {
  Jet j;
  j.v = d.w.real();
  j.d1 = d.dw.real();
  j.d2 = -d.dw.imag();
  j.d11 = d.d2w.real();
  j.d12 = -d.d2w.imag();
  j.d22 = -d.d2w.real();
  j.d111 = d.d3w.real();
  j.d112 = -d.d3w.imag();
  j.d122 = -d.d3w.real();
  j.d222 = d.d3w.imag();
  return j;
}

Jet imag_jet(const HolomorphicField::Data& d) {
  Jet j;
  j.v = d.w.imag();
  j.d1 = d.dw.imag();
  j.d2 = d.dw.real();
  j.d11 = d.d2w.imag();
  j.d12 = d.d2w.real();
  j.d22 = -d.d2w.imag();
  j.d111 = d.d3w.imag();
  j.d112 = d.d3w.real();
  j.d122 = -d.d3w.imag();
  j.d222 = -d.d3w.real();
  return j;
}

}  // namespace

ScalarField2 HolomorphicField::real_part() const {
  auto self = *this;
  return ScalarField2::from_function([self](const Point2& p) {
    return real_jet((*self.fn_)(cplx(p.x, p.y)));
  });
}

HolomorphicField HolomorphicField::log_deriv() const {
  auto self = *this;
  return HolomorphicField([self](cplx z) {
    const Data d = self.eval_full(z);
    const cplx g1 = d.d2w / d.dw;
    const cplx g2 = d.d3w / d.dw - g1 * g1;
    const cplx g3 =
        d.d4w / d.dw - 3.0 * d.d3w * d.d2w / (d.dw * d.dw) + 2.0 * g1 * g1 * g1;
    return Data{std::log(d.dw), g1, g2, g3, cplx(0.0)};
  });
}

ScalarField2 HolomorphicField::imag_part() const {
  auto self = *this;
  return ScalarField2::from_function([self](const Point2& p) {
    return imag_jet((*self.fn_)(cplx(p.x, p.y)));
  });
}

}  // namespace matgeo
