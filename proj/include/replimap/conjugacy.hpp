#pragma once

#include "replimap/params.hpp"

namespace replimap {

// Coordinate change y = h(x) = ln((1-x)/x), a decreasing bijection (0,1) -> R,
// and the conjugate map g_{a,b}(y) = y + a/(e^y + 1) - a b = h o f_{a,b} o h^{-1}.

// h(x) = ln((1-x)/x). Throws domain_error at the endpoints.
double h(double x);

// h^{-1}(y) = 1/(e^y + 1), evaluated on the non-overflowing exponential branch,
// so it stays finite and positive for |y| up to ~745 (then denormal underflow).
double h_inv(double y);

double eval_g(const Params& p, double y);

// g'(y) = 1 - a e^y/(e^y+1)^2 = 1 - a s(y)(1-s(y)) with s = h_inv.
double eval_g_prime(const Params& p, double y);

// g''(y) = a e^y (e^y - 1)/(e^y + 1)^3; sign(g'') = sign(y).
double eval_g_second(const Params& p, double y);

// Critical points and fixed point of g for a > 4:
//   y_min = ln(a/2 - 1 + sqrt(a^2/4 - a)) > 0,  y_max = -y_min,
//   g decreasing exactly on [y_max, y_min], increasing outside,
//   y0 = ln((1-b)/b) = h(b).
struct GCriticalData {
  double y_max;
  double y_min;
  double g_min;  // g(y_min), the local minimum value
  double g_max;  // g(y_max), the local maximum value
  double y0;
};

GCriticalData g_critical_data(const Params& p);  // throws monotone_regime_error if a <= 4

}  // namespace replimap
