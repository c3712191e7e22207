#include "replimap/map_core.hpp"

#include <cmath>
#include <string>

#include "replimap/conjugacy.hpp"
#include "replimap/errors.hpp"

namespace replimap {

const char* to_string(Stability s) {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::repelling: return "repelling";
    default: return "neutral";
  }
}

Stability classify_multiplier(double m) {
  double am = std::fabs(m);
  if (std::fabs(am - 1.0) <= 1e-12) return Stability::neutral;
  return am < 1.0 ? Stability::attracting : Stability::repelling;
}

static void check_x01(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("invalid-x: " + std::string(who) + "(" + std::to_string(x) +
                       ") needs x in [0,1]");
}

double eval_f(const Params& p, double x) {
  check_x01(x, "eval_f");
  if (x == 0.0 || x == 1.0) return x;
  return h_inv(h(x) + p.a * (x - p.b));
}

double eval_f_prime(const Params& p, double x) {
  check_x01(x, "eval_f_prime");
  if (x == 0.0) return std::exp(p.a * p.b);
  if (x == 1.0) return std::exp(p.a * (1.0 - p.b));
  double u = h(x) + p.a * (x - p.b);
  double t = x * (1.0 - x);
  // f'(x) = f(1-f)(1 - a t)/t with f(1-f) = h_inv(u) h_inv(-u)
  return h_inv(u) * h_inv(-u) * (1.0 - p.a * t) / t;
}

std::array<FixedPointReport, 3> fixed_points(const Params& p) {
  double m0 = std::exp(p.a * p.b);
  double mb = 1.0 - p.a * p.b * (1.0 - p.b);
  double m1 = std::exp(p.a * (1.0 - p.b));
  return {FixedPointReport{0.0, m0, classify_multiplier(m0)},
          FixedPointReport{p.b, mb, classify_multiplier(mb)},
          FixedPointReport{1.0, m1, classify_multiplier(m1)}};
}

CriticalPoints critical_points(const Params& p) {
  if (!(p.a > 4.0))
    throw monotone_regime_error("a=" + std::to_string(p.a) +
                                " <= 4 has no interior critical points");
  double x_max = 0.5 - std::sqrt(0.25 - 1.0 / p.a);
  double x_min = 1.0 - x_max;  // exact complement keeps x_max + x_min = 1
  CriticalPoints c;
  c.x_max = x_max;
  c.x_min = x_min;
  c.f_max = eval_f(p, x_max);
  c.f_min = eval_f(p, x_min);
  return c;
}

std::vector<double> iterate(const Params& p, double x0, long n) {
  check_x01(x0, "iterate");
  if (n < 0) throw domain_error("invalid-count: iterate needs n >= 0");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n) + 1);
  out.push_back(x0);
  double x = x0;
  for (long i = 0; i < n; ++i) {
    x = eval_f(p, x);
    out.push_back(x);
  }
  return out;
}

double iterate_sum_formula(const Params& p, double x0, long n) {
  check_x01(x0, "iterate_sum_formula");
  if (n < 1) throw domain_error("invalid-count: iterate_sum_formula needs n >= 1");
  if (x0 == 0.0 || x0 == 1.0) return x0;  // by continuity
  // Kahan-compensated sum: the a * sum scaling would otherwise promote
  // plain summation noise to ~1e-11 at large a
  double sum = 0.0, carry = 0.0;
  double x = x0;
  for (long i = 0; i < n; ++i) {
    double term = (x - p.b) - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
    x = eval_f(p, x);
  }
  return h_inv(h(x0) + p.a * sum);
}

double schwarzian(const Params& p, double x, double delta) {
  if (!(p.a > 4.0))
    throw monotone_regime_error("a=" + std::to_string(p.a) +
                                " <= 4: Schwarzian exclusion radius undefined");
  if (!(x > 0.0 && x < 1.0))
    throw domain_error("invalid-x: schwarzian(" + std::to_string(x) + ") needs x in (0,1)");
  CriticalPoints c = critical_points(p);
  if (delta < 0.0) delta = 1e-6 * (c.x_min - c.x_max);
  if (std::fabs(x - c.x_max) <= delta || std::fabs(x - c.x_min) <= delta)
    throw critical_point_singularity("x=" + std::to_string(x) +
                                     " within exclusion radius of a critical point");
  // Closed form via the decomposition f = h_inv o (h + a(x-b)):
  //   Sf = a [ -(1-6t)/Q - (3/2) a t (1-4t)/Q^2 + (2-at)/2 ] / t,
  // t = x(1-x), Q = 1 - a t.  Independent of b.
  double t = x * (1.0 - x);
  double q = 1.0 - p.a * t;
  return p.a *
         (-(1.0 - 6.0 * t) / q - 1.5 * p.a * t * (1.0 - 4.0 * t) / (q * q) +
          0.5 * (2.0 - p.a * t)) /
         t;
}

}  // namespace replimap
