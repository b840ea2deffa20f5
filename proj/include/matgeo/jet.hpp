#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace matgeo {

// Truncated Taylor data of a scalar field of two variables, carried to third
// order.  Unique partials are stored once: v; d1, d2; d11, d12, d22; d111,
// d112, d122, d222.  All arithmetic below propagates the full third-order
// data exactly (up to roundoff), so derived quantities inherit
// machine-accurate derivatives without finite differencing.
struct Jet {
  double v = 0.0;
  double d1 = 0.0, d2 = 0.0;
  double d11 = 0.0, d12 = 0.0, d22 = 0.0;
  double d111 = 0.0, d112 = 0.0, d122 = 0.0, d222 = 0.0;

  static Jet constant(double c) {
    Jet j;
    j.v = c;
    return j;
  }
  // Seed for the first coordinate at value x.
  static Jet var1(double x) {
    Jet j;
    j.v = x;
    j.d1 = 1.0;
    return j;
  }
  // Seed for the second coordinate at value y.
  static Jet var2(double y) {
    Jet j;
    j.v = y;
    j.d2 = 1.0;
    return j;
  }
};

inline Jet operator+(const Jet& a, const Jet& b) {
  return {a.v + b.v,     a.d1 + b.d1,   a.d2 + b.d2,   a.d11 + b.d11,
          a.d12 + b.d12, a.d22 + b.d22, a.d111 + b.d111, a.d112 + b.d112,
          a.d122 + b.d122, a.d222 + b.d222};
}

inline Jet operator-(const Jet& a, const Jet& b) {
  return {a.v - b.v,     a.d1 - b.d1,   a.d2 - b.d2,   a.d11 - b.d11,
          a.d12 - b.d12, a.d22 - b.d22, a.d111 - b.d111, a.d112 - b.d112,
          a.d122 - b.d122, a.d222 - b.d222};
}

inline Jet operator-(const Jet& a) {
  return {-a.v, -a.d1, -a.d2, -a.d11, -a.d12, -a.d22, -a.d111, -a.d112,
          -a.d122, -a.d222};
}

// Leibniz rule through third order.
inline Jet operator*(const Jet& f, const Jet& g) {
  Jet r;
  r.v = f.v * g.v;
  r.d1 = f.d1 * g.v + f.v * g.d1;
  r.d2 = f.d2 * g.v + f.v * g.d2;
  r.d11 = f.d11 * g.v + 2.0 * f.d1 * g.d1 + f.v * g.d11;
  r.d12 = f.d12 * g.v + f.d1 * g.d2 + f.d2 * g.d1 + f.v * g.d12;
  r.d22 = f.d22 * g.v + 2.0 * f.d2 * g.d2 + f.v * g.d22;
  r.d111 = f.d111 * g.v + 3.0 * f.d11 * g.d1 + 3.0 * f.d1 * g.d11 +
           f.v * g.d111;
  r.d112 = f.d112 * g.v + f.d11 * g.d2 + 2.0 * f.d12 * g.d1 +
           2.0 * f.d1 * g.d12 + f.d2 * g.d11 + f.v * g.d112;
  r.d122 = f.d122 * g.v + f.d22 * g.d1 + 2.0 * f.d12 * g.d2 +
           2.0 * f.d2 * g.d12 + f.d1 * g.d22 + f.v * g.d122;
  r.d222 = f.d222 * g.v + 3.0 * f.d22 * g.d2 + 3.0 * f.d2 * g.d22 +
           f.v * g.d222;
  return r;
}

inline Jet operator*(double c, const Jet& a) { return Jet::constant(c) * a; }
inline Jet operator*(const Jet& a, double c) { return c * a; }
inline Jet operator+(const Jet& a, double c) { return a + Jet::constant(c); }
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, double c) { return a - Jet::constant(c); }
inline Jet operator-(double c, const Jet& a) { return Jet::constant(c) - a; }

// Composition with a univariate map given its value and first three
// derivatives at f.v (Faà di Bruno through third order).
inline Jet compose(const Jet& f, double u0, double u1, double u2, double u3) {
  Jet r;
  r.v = u0;
  r.d1 = u1 * f.d1;
  r.d2 = u1 * f.d2;
  r.d11 = u2 * f.d1 * f.d1 + u1 * f.d11;
  r.d12 = u2 * f.d1 * f.d2 + u1 * f.d12;
  r.d22 = u2 * f.d2 * f.d2 + u1 * f.d22;
  r.d111 = u3 * f.d1 * f.d1 * f.d1 + 3.0 * u2 * f.d1 * f.d11 + u1 * f.d111;
  r.d112 = u3 * f.d1 * f.d1 * f.d2 +
           u2 * (f.d11 * f.d2 + 2.0 * f.d12 * f.d1) + u1 * f.d112;
  r.d122 = u3 * f.d1 * f.d2 * f.d2 +
           u2 * (f.d22 * f.d1 + 2.0 * f.d12 * f.d2) + u1 * f.d122;
  r.d222 = u3 * f.d2 * f.d2 * f.d2 + 3.0 * u2 * f.d2 * f.d22 + u1 * f.d222;
  return r;
}

inline Jet recip(const Jet& f) {
  if (f.v == 0.0) throw std::domain_error("division by zero field value");
  const double t = 1.0 / f.v;
  return compose(f, t, -t * t, 2.0 * t * t * t, -6.0 * t * t * t * t);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
inline Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
inline Jet operator/(double c, const Jet& a) { return c * recip(a); }

inline Jet exp(const Jet& f) {
  const double e = std::exp(f.v);
  return compose(f, e, e, e, e);
}

inline Jet log(const Jet& f) {
  if (f.v <= 0.0) throw std::domain_error("ln of non-positive field value");
  const double t = 1.0 / f.v;
  return compose(f, std::log(f.v), t, -t * t, 2.0 * t * t * t);
}

inline Jet sin(const Jet& f) {
  const double s = std::sin(f.v), c = std::cos(f.v);
  return compose(f, s, c, -s, -c);
}

inline Jet cos(const Jet& f) {
  const double s = std::sin(f.v), c = std::cos(f.v);
  return compose(f, c, -s, -c, s);
}

inline Jet sqrt(const Jet& f) {
  if (f.v <= 0.0) throw std::domain_error("sqrt of non-positive field value");
  const double s = std::sqrt(f.v);
  return compose(f, s, 0.5 / s, -0.25 / (s * f.v), 0.375 / (s * f.v * f.v));
}

inline Jet atan(const Jet& f) {
  const double t = f.v;
  const double q = 1.0 / (1.0 + t * t);
  return compose(f, std::atan(t), q, -2.0 * t * q * q,
                 (6.0 * t * t - 2.0) * q * q * q);
}

// Two-argument arctangent with the usual quadrant conventions.  The branch
// is chosen so the argument of the inner atan stays in [-1, 1]; both
// branches carry identical derivative data where they overlap.
inline Jet atan2(const Jet& y, const Jet& x) {
  if (x.v == 0.0 && y.v == 0.0)
    throw std::domain_error("atan2 at the origin of its arguments");
  if (std::fabs(x.v) >= std::fabs(y.v)) {
    Jet a = atan(y / x);
    if (x.v < 0.0) a.v += (y.v >= 0.0) ? M_PI : -M_PI;
    return a;
  }
  Jet a = -atan(x / y);
  a.v += (y.v > 0.0) ? M_PI_2 : -M_PI_2;
  return a;
}

inline Jet pow(const Jet& f, int n) {
  if (n == 0) return Jet::constant(1.0);
  bool neg = n < 0;
  unsigned m = neg ? static_cast<unsigned>(-(long long)n)
                   : static_cast<unsigned>(n);
  Jet acc = Jet::constant(1.0);
  Jet base = f;
  while (m) {
    if (m & 1u) acc = acc * base;
    base = base * base;
    m >>= 1;
  }
  return neg ? recip(acc) : acc;
}

// Taylor data of the partial derivative along axis (1 or 2).  The result is
// exact one order lower than the input: its own third-order slots would need
// fourth derivatives of the operand and are set to zero.
inline Jet deriv(const Jet& f, int axis) {
  Jet r;
  if (axis == 1) {
    r.v = f.d1;
    r.d1 = f.d11;
    r.d2 = f.d12;
    r.d11 = f.d111;
    r.d12 = f.d112;
    r.d22 = f.d122;
  } else if (axis == 2) {
    r.v = f.d2;
    r.d1 = f.d12;
    r.d2 = f.d22;
    r.d11 = f.d112;
    r.d12 = f.d122;
    r.d22 = f.d222;
  } else {
    throw std::invalid_argument("deriv axis must be 1 or 2");
  }
  return r;
}

inline double abs_diff(const Jet& a, const Jet& b) {
  auto d = [](double x, double y) { return std::fabs(x - y); };
  double m = d(a.v, b.v);
  m = std::max(m, d(a.d1, b.d1));
  m = std::max(m, d(a.d2, b.d2));
  m = std::max(m, d(a.d11, b.d11));
  m = std::max(m, d(a.d12, b.d12));
  m = std::max(m, d(a.d22, b.d22));
  m = std::max(m, d(a.d111, b.d111));
  m = std::max(m, d(a.d112, b.d112));
  m = std::max(m, d(a.d122, b.d122));
  m = std::max(m, d(a.d222, b.d222));
  return m;
}

}  // namespace matgeo
