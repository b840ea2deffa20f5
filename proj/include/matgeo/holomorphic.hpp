#pragma once

#include <complex>
#include <functional>
#include <memory>

#include "matgeo/field.hpp"

namespace matgeo {

using cplx = std::complex<double>;

struct HolomorphicValue {
  cplx w;
  cplx dw;
  cplx d2w;
};

// Holomorphic map of the plane (or a subdomain) exposed together with its
// first two complex derivatives; higher derivatives are kept internally so
// that real and imaginary parts (and the log-derivative needed by
// conformal-factor constructions) can be lifted to full third-order fields.
class HolomorphicField {
 public:
  struct Data {
    cplx w, dw, d2w, d3w, d4w;
  };
  using EvalFn = std::function<Data(cplx)>;

  static HolomorphicField identity();
  static HolomorphicField affine(cplx a, cplx b);  // w = a z + b, a != 0
  static HolomorphicField exponential();           // w = exp(z)
  // Built from expressions for Re w and Im w; the Cauchy-Riemann relations
  // are verified at every evaluation (tolerance 1e-8).
  static HolomorphicField from_parts(const ScalarField2& re,
                                     const ScalarField2& im);

  // Public contract: value and first two derivatives, with dw != 0 enforced.
  HolomorphicValue eval(cplx z) const;
  // Full internal data (adds the third derivative).
  Data eval_full(cplx z) const;

  // Real and imaginary parts as scalar fields with exact third-order data,
  // reconstructed from the complex derivatives.
  ScalarField2 real_part() const;
  ScalarField2 imag_part() const;

  // ln w' as a holomorphic field (a local branch; only its derivatives and
  // real part are meaningful globally).  Its own fourth derivative is not
  // propagated.
  HolomorphicField log_deriv() const;

 private:
  explicit HolomorphicField(EvalFn fn)
      : fn_(std::make_shared<EvalFn>(std::move(fn))) {}
  std::shared_ptr<const EvalFn> fn_;
};

}  // namespace matgeo
