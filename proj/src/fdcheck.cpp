#include "matgeo/fdcheck.hpp"

namespace matgeo {
namespace {

// Plain second-order central-difference jet at spacing h.
Jet fd_once(const ScalarField2& f, const Point2& p, double h) {
  auto F = [&](double dx, double dy) {
    return f.value({p.x + dx, p.y + dy});
  };
  const double f00 = F(0, 0);
  const double fp0 = F(h, 0), fm0 = F(-h, 0);
  const double f0p = F(0, h), f0m = F(0, -h);
  const double fpp = F(h, h), fpm = F(h, -h), fmp = F(-h, h), fmm = F(-h, -h);
  const double fP0 = F(2 * h, 0), fM0 = F(-2 * h, 0);
  const double f0P = F(0, 2 * h), f0M = F(0, -2 * h);

  Jet j;
  j.v = f00;
  j.d1 = (fp0 - fm0) / (2 * h);
  j.d2 = (f0p - f0m) / (2 * h);
  j.d11 = (fp0 - 2 * f00 + fm0) / (h * h);
  j.d22 = (f0p - 2 * f00 + f0m) / (h * h);
  j.d12 = (fpp - fpm - fmp + fmm) / (4 * h * h);
  j.d111 = (fP0 - 2 * fp0 + 2 * fm0 - fM0) / (2 * h * h * h);
  j.d222 = (f0P - 2 * f0p + 2 * f0m - f0M) / (2 * h * h * h);
  // d112: x-second-difference of the y-centered first difference.
  j.d112 = ((fpp - fpm) - 2 * (f0p - f0m) + (fmp - fmm)) / (2 * h * h * h);
  j.d122 = ((fpp - fmp) - 2 * (fp0 - fm0) + (fpm - fmm)) / (2 * h * h * h);
  return j;
}

}  // namespace

Jet fd_jet(const ScalarField2& f, const Point2& p, double h) {
  const Jet c = fd_once(f, p, h);
  const Jet fine = fd_once(f, p, 0.5 * h);
  // All stencils above are O(h^2) accurate; one Richardson step gives O(h^4).
  Jet r = (4.0 / 3.0) * fine - (1.0 / 3.0) * c;
  r.v = f.value(p);
  return r;
}

}  // namespace matgeo
