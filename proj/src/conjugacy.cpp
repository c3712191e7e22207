#include "replimap/conjugacy.hpp"

#include <cmath>
#include <string>

#include "replimap/errors.hpp"

namespace replimap {

double h(double x) {
  if (!(x > 0.0 && x < 1.0))
    throw domain_error("invalid-x: h(" + std::to_string(x) + ") needs x in (0,1)");
  // No cancellation: 1-x is exact for x >= 1/2 (Sterbenz) and harmless below.
  return std::log((1.0 - x) / x);
}

double h_inv(double y) {
  // Branch on sign so the exponential argument is never positive.
  if (y >= 0.0) {
    double e = std::exp(-y);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(y));
}

double eval_g(const Params& p, double y) { return y + p.a * h_inv(y) - p.a * p.b; }

double eval_g_prime(const Params& p, double y) {
  // s(y)(1-s(y)) = h_inv(y) h_inv(-y), each factor on its stable branch
  return 1.0 - p.a * h_inv(y) * h_inv(-y);
}

double eval_g_second(const Params& p, double y) {
  // a e^y (e^y - 1)/(e^y+1)^3 = a s(1-s)(1-2s), s = h_inv(y)
  double s = h_inv(y);
  return p.a * s * h_inv(-y) * (1.0 - 2.0 * s);
}

GCriticalData g_critical_data(const Params& p) {
  if (!(p.a > 4.0))
    throw monotone_regime_error("a=" + std::to_string(p.a) +
                                " <= 4 leaves g monotone (no critical points)");
  double half = 0.5 * p.a;
  double y_min = std::log(half - 1.0 + std::sqrt(half * (half - 2.0)));
  // the two critical arguments multiply to 1, so y_max = -y_min exactly
  double y_max = -y_min;
  GCriticalData d;
  d.y_min = y_min;
  d.y_max = y_max;
  d.g_min = eval_g(p, y_min);
  d.g_max = eval_g(p, y_max);
  d.y0 = h(p.b);
  return d;
}

}  // namespace replimap
