#pragma once

#include <functional>

#include "matgeo/grid.hpp"

namespace matgeo {

// Tensor-product Simpson rule over a rectangle (node counts are rounded up
// to the next odd number internally).
double simpson_rect(const std::function<double(const Point2&)>& f,
                    const RectGrid& g);

// Simpson rule over a disk in polar coordinates; f is evaluated in Cartesian
// coordinates and weighted by the polar Jacobian r.
double simpson_disk(const std::function<double(const Point2&)>& f,
                    const DiskGrid& g);

// One-dimensional cumulative integral of sampled values (uniform step),
// trapezoid with third-order end correction; out[0] = 0.
void cumulative_integral(const double* samples, int n, double step,
                         double* out);

}  // namespace matgeo
