#pragma once

#include <array>
#include <vector>

#include "replimap/params.hpp"

namespace replimap {

enum class Stability { attracting, repelling, neutral };

const char* to_string(Stability s);

// attracting iff |m| < 1, repelling iff |m| > 1, with a neutral band
// ||m| - 1| <= 1e-12 absorbing the rounding of threshold-exact parameters.
Stability classify_multiplier(double m);

struct FixedPointReport {
  double location;
  double multiplier;
  Stability classification;
};

struct CriticalPoints {
  double x_max;  // location of the local maximum, in (0, 1/2)
  double x_min;  // location of the local minimum, = 1 - x_max
  double f_max;  // f(x_max)
  double f_min;  // f(x_min)
};

// f_{a,b}(x) = x / (x + (1-x) e^{a(x-b)}), evaluated as h_inv(h(x) + a(x-b))
// so no intermediate exponential can overflow; endpoints are returned exactly.
double eval_f(const Params& p, double x);

// f'(x); closed forms e^{ab}, e^{a(1-b)} at the endpoints, elsewhere the
// stable product form f(1-f)(1 - a x(1-x)) / (x(1-x)).
double eval_f_prime(const Params& p, double x);

// The three fixed points 0, b, 1 with closed-form multipliers
// e^{ab}, 1 - a b(1-b), e^{a(1-b)}.
std::array<FixedPointReport, 3> fixed_points(const Params& p);

// Closed-form critical points x = 1/2 -+ sqrt(1/4 - 1/a) for a > 4.
CriticalPoints critical_points(const Params& p);  // monotone_regime_error if a <= 4

// [x0, f(x0), ..., f^n(x0)]
std::vector<double> iterate(const Params& p, double x0, long n);

// f^n(x0) via the partial-sum closed form
//   f^n(x) = x / (x + (1-x) e^{a Sum_{i<n}(f^i(x) - b)}),
// an independent cross-check of plain composition.
double iterate_sum_formula(const Params& p, double x0, long n);

// Schwarzian derivative Sf = (f''/f')' - (1/2)(f''/f')^2 in closed form
// (b-independent). delta < 0 selects the default exclusion radius
// 1e-6 (x_min - x_max) around the two critical points, where Sf -> -inf.
double schwarzian(const Params& p, double x, double delta = -1.0);

}  // namespace replimap
