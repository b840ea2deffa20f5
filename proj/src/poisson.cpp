#include <cmath>
#include <vector>

#include "matgeo/dislocation.hpp"
#include "matgeo/geometry.hpp"

namespace matgeo {
namespace {

struct Stencil {
  // Conservative flux coefficients c^{ab} = sqrt(a) a^{ab}, sampled where
  // the scheme needs them.
  std::vector<double> c11e, c11w;  // east/west half-points (i +- 1/2, j)
  std::vector<double> c22n, c22s;  // north/south half-points (i, j +- 1/2)
  std::vector<double> c12;         // node values, full grid
  std::vector<double> sqrta;       // node values, full grid
};

double c_ab(const MetricJets& m, int a, int b) {
  return (m.sqrt_det * m.inv[a][b]).v;
}

}  // namespace

PoissonResult solve_laplace_beltrami(const Metric2& a, const RectGrid& grid,
                                     const ScalarField2& source,
                                     const ScalarField2& boundary, double tol,
                                     long max_iter) {
  const int nx = grid.nx, ny = grid.ny;
  const double hx = grid.hx(), hy = grid.hy();
  const long n = static_cast<long>(nx) * ny;
  auto idx = [nx](int i, int j) { return static_cast<size_t>(j) * nx + i; };

  Stencil st;
  st.c11e.assign(n, 0.0);
  st.c11w.assign(n, 0.0);
  st.c22n.assign(n, 0.0);
  st.c22s.assign(n, 0.0);
  st.c12.assign(n, 0.0);
  st.sqrta.assign(n, 0.0);
  std::vector<double> rhs(n, 0.0), phi0(n, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Point2 p = grid.node(i, j);
      const MetricJets m = a.eval(p);
      st.c12[idx(i, j)] = c_ab(m, 0, 1);
      st.sqrta[idx(i, j)] = m.sqrt_det.v;
      const bool bnd = (i == 0 || j == 0 || i == nx - 1 || j == ny - 1);
      if (bnd) {
        phi0[idx(i, j)] = boundary.value(p);
      } else {
        st.c11e[idx(i, j)] = c_ab(a.eval({p.x + 0.5 * hx, p.y}), 0, 0);
        st.c11w[idx(i, j)] = c_ab(a.eval({p.x - 0.5 * hx, p.y}), 0, 0);
        st.c22n[idx(i, j)] = c_ab(a.eval({p.x, p.y + 0.5 * hy}), 1, 1);
        st.c22s[idx(i, j)] = c_ab(a.eval({p.x, p.y - 0.5 * hy}), 1, 1);
        rhs[idx(i, j)] = m.sqrt_det.v * source.value(p);
      }
    }

  // L u at interior nodes; u holds the full grid including boundary ring.
  auto apply = [&](const std::vector<double>& u, std::vector<double>& out) {
    for (int j = 1; j < ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) {
        const size_t k = idx(i, j);
        double v =
            (st.c11e[k] * (u[idx(i + 1, j)] - u[k]) -
             st.c11w[k] * (u[k] - u[idx(i - 1, j)])) /
                (hx * hx) +
            (st.c22n[k] * (u[idx(i, j + 1)] - u[k]) -
             st.c22s[k] * (u[k] - u[idx(i, j - 1)])) /
                (hy * hy);
        // Cross terms d_x(c12 d_y u) + d_y(c12 d_x u), centered.
        auto dyu = [&](int ii, int jj) {
          if (jj == 0) return (u[idx(ii, 1)] - u[idx(ii, 0)]) / hy;
          if (jj == ny - 1)
            return (u[idx(ii, ny - 1)] - u[idx(ii, ny - 2)]) / hy;
          return (u[idx(ii, jj + 1)] - u[idx(ii, jj - 1)]) / (2.0 * hy);
        };
        auto dxu = [&](int ii, int jj) {
          if (ii == 0) return (u[idx(1, jj)] - u[idx(0, jj)]) / hx;
          if (ii == nx - 1)
            return (u[idx(nx - 1, jj)] - u[idx(nx - 2, jj)]) / hx;
          return (u[idx(ii + 1, jj)] - u[idx(ii - 1, jj)]) / (2.0 * hx);
        };
        v += (st.c12[idx(i + 1, j)] * dyu(i + 1, j) -
              st.c12[idx(i - 1, j)] * dyu(i - 1, j)) /
             (2.0 * hx);
        v += (st.c12[idx(i, j + 1)] * dxu(i, j + 1) -
              st.c12[idx(i, j - 1)] * dxu(i, j - 1)) /
             (2.0 * hy);
        out[k] = v;
      }
  };

  // Shift out the boundary data: solve L z = rhs - L phi0 with z = 0 on the
  // boundary, then phi = phi0 + z.
  std::vector<double> lphi0(n, 0.0);
  apply(phi0, lphi0);
  std::vector<double> b(n, 0.0);
  double bnorm = 0.0;
  for (int j = 1; j < ny - 1; ++j)
    for (int i = 1; i < nx - 1; ++i) {
      const size_t k = idx(i, j);
      b[k] = rhs[k] - lphi0[k];
      bnorm += b[k] * b[k];
    }
  bnorm = std::sqrt(bnorm);

  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (int j = 1; j < ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) s += x[idx(i, j)] * y[idx(i, j)];
    return s;
  };

  // BiCGStab, matrix-free.
  std::vector<double> x(n, 0.0), r(b), r0(b), p(n, 0.0), v(n, 0.0),
      s(n, 0.0), t(n, 0.0);
  double rho_old = 1.0, alpha = 1.0, omega = 1.0;
  long iter = 0;
  double rnorm = bnorm;
  if (bnorm == 0.0) rnorm = 0.0;
  while (rnorm > tol * std::max(bnorm, 1e-300) && iter < max_iter) {
    ++iter;
    const double rho = dot(r0, r);
    if (rho == 0.0) break;
    if (iter == 1) {
      p = r;
    } else {
      const double beta = (rho / rho_old) * (alpha / omega);
      for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i) {
          const size_t k = idx(i, j);
          p[k] = r[k] + beta * (p[k] - omega * v[k]);
        }
    }
    apply(p, v);
    alpha = rho / dot(r0, v);
    for (int j = 1; j < ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) {
        const size_t k = idx(i, j);
        s[k] = r[k] - alpha * v[k];
      }
    apply(s, t);
    const double tt = dot(t, t);
    omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
    rnorm = 0.0;
    for (int j = 1; j < ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) {
        const size_t k = idx(i, j);
        x[k] += alpha * p[k] + omega * s[k];
        r[k] = s[k] - omega * t[k];
        rnorm += r[k] * r[k];
      }
    rnorm = std::sqrt(rnorm);
    rho_old = rho;
    if (omega == 0.0) break;
  }
  if (rnorm > tol * std::max(bnorm, 1e-300))
    throw FieldError("Poisson solve did not reach the residual target");

  PoissonResult out;
  out.grid = grid;
  out.phi.assign(n, 0.0);
  for (long k = 0; k < n; ++k) out.phi[k] = phi0[k] + x[k];
  out.iterations = static_cast<int>(iter);
  out.residual = bnorm > 0.0 ? rnorm / bnorm : 0.0;
  return out;
}

PoissonResult solve_flat_potential(const Metric2& a, const RectGrid& grid,
                                   const ScalarField2& boundary, double tol,
                                   long max_iter) {
  ScalarField2 K = ScalarField2::from_function([a](const Point2& p) {
    return Jet::constant(gauss_curvature(a, p));
  });
  return solve_laplace_beltrami(a, grid, K, boundary, tol, max_iter);
}

}  // namespace matgeo
