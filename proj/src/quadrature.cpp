#include "matgeo/quadrature.hpp"

#include <cmath>
#include <vector>

namespace matgeo {
namespace {

int make_odd(int n) { return (n % 2 == 0) ? n + 1 : n; }

std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(n, 0.0);
  for (int i = 0; i + 2 < n; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  return w;
}

}  // namespace

double simpson_rect(const std::function<double(const Point2&)>& f,
                    const RectGrid& g) {
  const int nx = make_odd(std::max(3, g.nx));
  const int ny = make_odd(std::max(3, g.ny));
  const double hx = (g.x1 - g.x0) / (nx - 1);
  const double hy = (g.y1 - g.y0) / (ny - 1);
  const auto wx = simpson_weights(nx, hx);
  const auto wy = simpson_weights(ny, hy);
  double s = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      s += wx[i] * wy[j] * f({g.x0 + i * hx, g.y0 + j * hy});
  return s;
}

double simpson_disk(const std::function<double(const Point2&)>& f,
                    const DiskGrid& g) {
  const int nr = make_odd(std::max(3, g.nr));
  const int nt = make_odd(std::max(3, g.ntheta));
  const double hr = g.radius / (nr - 1);
  const double ht = 2.0 * M_PI / (nt - 1);
  const auto wr = simpson_weights(nr, hr);
  const auto wt = simpson_weights(nt, ht);
  double s = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = i * hr;
    for (int j = 0; j < nt; ++j) {
      const double th = j * ht;
      s += wr[i] * wt[j] * r *
           f({g.cx + r * std::cos(th), g.cy + r * std::sin(th)});
    }
  }
  return s;
}

void cumulative_integral(const double* v, int n, double step, double* out) {
  // Corrected trapezoid: the -h^2/12 (f'_{i+1} - f'_i) endpoint correction
  // with central-difference slopes lifts the local order to four.
  auto slope = [&](int i) {
    if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * step);
    if (i == n - 1)
      return (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * step);
    return (v[i + 1] - v[i - 1]) / (2.0 * step);
  };
  out[0] = 0.0;
  if (n < 3) {
    for (int i = 1; i < n; ++i)
      out[i] = out[i - 1] + 0.5 * step * (v[i - 1] + v[i]);
    return;
  }
  for (int i = 1; i < n; ++i) {
    const double piece = 0.5 * step * (v[i - 1] + v[i]) -
                         step * step / 12.0 * (slope(i) - slope(i - 1));
    out[i] = out[i - 1] + piece;
  }
}

}  // namespace matgeo
