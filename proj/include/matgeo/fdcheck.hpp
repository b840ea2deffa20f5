#pragma once

#include "matgeo/field.hpp"

namespace matgeo {

// Central-difference estimate of the third-order Taylor data of f at p,
// improved by one Richardson step (stencils at spacing h and h/2 combined
// to cancel the leading O(h^2) truncation term).  Used as an independent
// cross-check of the propagated derivative data.
Jet fd_jet(const ScalarField2& f, const Point2& p, double h);

}  // namespace matgeo
