#pragma once

#include <string>

#include "replimap/errors.hpp"

namespace replimap {

// Parameter pair (a,b) of the map family f_{a,b}(x) = x / (x + (1-x) e^{a(x-b)}).
// a > 0 is the selection-intensity composite, b in (0,1) the interior equilibrium.
struct Params {
  double a;
  double b;

  Params(double a_, double b_) : a(a_), b(b_) { validate(); }

  void validate() const {
    if (!(a > 0.0))
      throw domain_error("invalid-params: a=" + std::to_string(a) + " must be > 0");
    if (!(b > 0.0 && b < 1.0))
      throw domain_error("invalid-params: b=" + std::to_string(b) + " must be in (0,1)");
  }

  // a > 4: f has two interior critical points (unimodal-pair regime).
  bool unimodal_regime() const { return a > 4.0; }

  // a > 2/(b(1-b)): the interior fixed point has lost stability.
  bool fixed_point_unstable() const { return a > 2.0 / (b * (1.0 - b)); }
};

}  // namespace replimap
