#pragma once

#include <cmath>
#include <stdexcept>

namespace matgeo {

// Graphene bookkeeping in angstroms.  Bravais vectors
//   a1 = (a/2, sqrt(3) a / 2),  a2 = (-a/2, sqrt(3) a / 2),  a = sqrt(3) d,
// with d the nearest-neighbour distance; the B sublattice sits at
// delta = (a1 + a2) / 3.
struct LatticeModel {
  double d = 1.42;

  double a() const { return std::sqrt(3.0) * d; }
  double a1x() const { return 0.5 * a(); }
  double a1y() const { return 0.5 * std::sqrt(3.0) * a(); }
  double a2x() const { return -0.5 * a(); }
  double a2y() const { return a1y(); }
};

enum class Sublattice { A, B };

struct LatticePoint {
  double x, y;
};

inline LatticePoint position(const LatticeModel& lat, long m, long n,
                             Sublattice s) {
  LatticePoint p{m * lat.a1x() + n * lat.a2x(), m * lat.a1y() + n * lat.a2y()};
  if (s == Sublattice::B) {
    p.x += (lat.a1x() + lat.a2x()) / 3.0;
    p.y += (lat.a1y() + lat.a2y()) / 3.0;
  }
  return p;
}

struct DiscreteBurgers {
  long m, n;
  double bx, by;
  double strength;
};

inline DiscreteBurgers burgers(const LatticeModel& lat, long m, long n) {
  if (m == 0 && n == 0)
    throw std::invalid_argument("Burgers vector must be a nonzero translation");
  DiscreteBurgers b;
  b.m = m;
  b.n = n;
  b.bx = m * lat.a1x() + n * lat.a2x();
  b.by = m * lat.a1y() + n * lat.a2y();
  b.strength = std::hypot(b.bx, b.by);
  return b;
}

// Strength computed through the Gram matrix (a1.a1 = a2.a2 = a^2,
// a1.a2 = a^2/2) — an independent route for cross-checking.
inline double burgers_strength_gram(const LatticeModel& lat, long m, long n) {
  const double a2 = lat.a() * lat.a();
  return std::sqrt(a2 * (m * m + n * n + m * n));
}

// Atom and bond counts of the four polygons meeting at a bond:
// v = p + q + r + s - 8 vertices, c = v + 3 edges.  The Stone-Wales ring
// change (p, q, r, s) -> (p-1, q+1, r-1, s+1) leaves both invariant.
struct SWCounts {
  long v, c;
};

inline SWCounts stone_wales_counts(long p, long q, long r, long s) {
  if (p < 3 || q < 3 || r < 3 || s < 3)
    throw std::invalid_argument("polygons require at least three sides");
  SWCounts out;
  out.v = p + q + r + s - 8;
  out.c = out.v + 3;
  return out;
}

}  // namespace matgeo
