#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "matgeo/jet.hpp"

namespace matgeo {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Region of definition of a field: the whole plane, an axis-aligned
// rectangle, or a disk.
struct Domain {
  enum class Kind { Plane, Rect, Disk };
  Kind kind = Kind::Plane;
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // rectangle bounds
  double cx = 0.0, cy = 0.0, radius = 0.0;        // disk data

  static Domain plane() { return {}; }
  static Domain rect(double x0, double x1, double y0, double y1) {
    Domain d;
    d.kind = Kind::Rect;
    d.x0 = x0;
    d.x1 = x1;
    d.y0 = y0;
    d.y1 = y1;
    return d;
  }
  static Domain disk(double cx, double cy, double r) {
    Domain d;
    d.kind = Kind::Disk;
    d.cx = cx;
    d.cy = cy;
    d.radius = r;
    return d;
  }

  bool contains(const Point2& p) const {
    switch (kind) {
      case Kind::Plane:
        return true;
      case Kind::Rect:
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
      case Kind::Disk: {
        const double dx = p.x - cx, dy = p.y - cy;
        return dx * dx + dy * dy <= radius * radius;
      }
    }
    return false;
  }

  // Intersection, with the convention that combining a bounded region with
  // the plane keeps the bounded region.  Mixed rect/disk combinations keep
  // the first bounded operand; evaluation still checks both operands'
  // closures, so this is only a reporting choice.
  static Domain meet(const Domain& a, const Domain& b) {
    if (a.kind == Kind::Plane) return b;
    return a;
  }
};

class FieldError : public std::runtime_error {
 public:
  explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

// Immutable scalar field on (a subset of) the plane.  Evaluation yields the
// full third-order Taylor data at the point.  Fields are closed under the
// arithmetic and elementary-function combinators below, so geometric
// quantities built from them carry exact derivatives.
class ScalarField2 {
 public:
  using EvalFn = std::function<Jet(const Point2&)>;

  ScalarField2() : ScalarField2(constant(0.0)) {}

  static ScalarField2 constant(double c) {
    return ScalarField2([c](const Point2&) { return Jet::constant(c); },
                        Domain::plane());
  }
  // axis 1 is x, axis 2 is y.
  static ScalarField2 coordinate(int axis) {
    if (axis == 1)
      return ScalarField2([](const Point2& p) { return Jet::var1(p.x); },
                          Domain::plane());
    if (axis == 2)
      return ScalarField2([](const Point2& p) { return Jet::var2(p.y); },
                          Domain::plane());
    throw std::invalid_argument("coordinate axis must be 1 or 2");
  }
  static ScalarField2 from_function(EvalFn fn,
                                    Domain dom = Domain::plane()) {
    return ScalarField2(std::move(fn), dom);
  }

  Jet eval(const Point2& p) const {
    if (!dom_.contains(p)) throw FieldError("point outside field domain");
    return (*fn_)(p);
  }
  double value(const Point2& p) const { return eval(p).v; }
  const Domain& domain() const { return dom_; }

  ScalarField2 restricted(Domain d) const {
    ScalarField2 r = *this;
    r.dom_ = d;
    return r;
  }

 private:
  ScalarField2(EvalFn fn, Domain dom)
      : fn_(std::make_shared<EvalFn>(std::move(fn))), dom_(dom) {}

  std::shared_ptr<const EvalFn> fn_;
  Domain dom_;

  friend ScalarField2 lift2(const ScalarField2&, const ScalarField2&,
                            Jet (*)(const Jet&, const Jet&));
  friend ScalarField2 lift1(const ScalarField2&, Jet (*)(const Jet&));
};

inline ScalarField2 lift2(const ScalarField2& a, const ScalarField2& b,
                          Jet (*op)(const Jet&, const Jet&)) {
  auto fa = a.fn_;
  auto fb = b.fn_;
  return ScalarField2::from_function(
      [fa, fb, op](const Point2& p) { return op((*fa)(p), (*fb)(p)); },
      Domain::meet(a.domain(), b.domain()));
}

inline ScalarField2 lift1(const ScalarField2& a, Jet (*op)(const Jet&)) {
  auto fa = a.fn_;
  return ScalarField2::from_function(
      [fa, op](const Point2& p) { return op((*fa)(p)); }, a.domain());
}

inline ScalarField2 operator+(const ScalarField2& a, const ScalarField2& b) {
  return lift2(a, b, +[](const Jet& x, const Jet& y) { return x + y; });
}
inline ScalarField2 operator-(const ScalarField2& a, const ScalarField2& b) {
  return lift2(a, b, +[](const Jet& x, const Jet& y) { return x - y; });
}
inline ScalarField2 operator*(const ScalarField2& a, const ScalarField2& b) {
  return lift2(a, b, +[](const Jet& x, const Jet& y) { return x * y; });
}
inline ScalarField2 operator/(const ScalarField2& a, const ScalarField2& b) {
  return lift2(a, b, +[](const Jet& x, const Jet& y) { return x / y; });
}
inline ScalarField2 operator-(const ScalarField2& a) {
  return lift1(a, +[](const Jet& x) { return -x; });
}
inline ScalarField2 operator+(const ScalarField2& a, double c) {
  return a + ScalarField2::constant(c);
}
inline ScalarField2 operator+(double c, const ScalarField2& a) { return a + c; }
inline ScalarField2 operator-(const ScalarField2& a, double c) {
  return a - ScalarField2::constant(c);
}
inline ScalarField2 operator-(double c, const ScalarField2& a) {
  return ScalarField2::constant(c) - a;
}
inline ScalarField2 operator*(const ScalarField2& a, double c) {
  return a * ScalarField2::constant(c);
}
inline ScalarField2 operator*(double c, const ScalarField2& a) { return a * c; }
inline ScalarField2 operator/(const ScalarField2& a, double c) {
  return a * (1.0 / c);
}
inline ScalarField2 operator/(double c, const ScalarField2& a) {
  return ScalarField2::constant(c) / a;
}

inline ScalarField2 exp(const ScalarField2& a) {
  return lift1(a, +[](const Jet& x) { return exp(x); });
}
inline ScalarField2 log(const ScalarField2& a) {
  return lift1(a, +[](const Jet& x) { return log(x); });
}
inline ScalarField2 sin(const ScalarField2& a) {
  return lift1(a, +[](const Jet& x) { return sin(x); });
}
inline ScalarField2 cos(const ScalarField2& a) {
  return lift1(a, +[](const Jet& x) { return cos(x); });
}
inline ScalarField2 sqrt(const ScalarField2& a) {
  return lift1(a, +[](const Jet& x) { return sqrt(x); });
}
inline ScalarField2 atan2(const ScalarField2& y, const ScalarField2& x) {
  return lift2(y, x, +[](const Jet& a, const Jet& b) { return atan2(a, b); });
}
inline ScalarField2 pow(const ScalarField2& a, int n) {
  ScalarField2 acc = ScalarField2::constant(1.0);
  // Lambda capture of n via from_function keeps the field immutable.
  return ScalarField2::from_function(
      [a, n](const Point2& p) { return pow(a.eval(p), n); }, a.domain());
}

// Field-level partial derivative; exact one order lower than its operand.
inline ScalarField2 deriv(const ScalarField2& a, int axis) {
  if (axis != 1 && axis != 2)
    throw std::invalid_argument("deriv axis must be 1 or 2");
  return ScalarField2::from_function(
      [a, axis](const Point2& p) { return deriv(a.eval(p), axis); },
      a.domain());
}

struct VectorField2 {
  ScalarField2 c1;
  ScalarField2 c2;
};

}  // namespace matgeo
