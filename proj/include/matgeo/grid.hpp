#pragma once

#include "matgeo/field.hpp"

namespace matgeo {

struct RectGrid {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 33, ny = 33;  // node counts along each axis

  double hx() const { return (x1 - x0) / (nx - 1); }
  double hy() const { return (y1 - y0) / (ny - 1); }
  Point2 node(int i, int j) const {
    return {x0 + i * hx(), y0 + j * hy()};
  }
};

struct DiskGrid {
  double cx = 0.0, cy = 0.0, radius = 1.0;
  int nr = 65, ntheta = 65;
};

}  // namespace matgeo
