#pragma once

// Internal helpers shared by the periodic-orbit searches: evaluate F^n along
// with its derivative chain and a rounding-amplification bound, and polish
// fixed points of F^n with bracket safeguarding.

#include <cmath>
#include <limits>
#include <vector>

#include "replimap/errors.hpp"

namespace replimap::detail {

struct PowerEval {
  double value;  // F^n(x) - x
  double deriv;  // (F^n)'(x) - 1
  double amp;    // sum_k prod_{j>k} |F'(x_j)|, forward-error amplification
};

template <class F>
double power_delta(F&& f, double x, int n) {
  double cur = x;
  for (int k = 0; k < n; ++k) cur = f(cur);
  return cur - x;
}

template <class F, class DF>
PowerEval eval_power(F&& f, DF&& df, double x, int n) {
  std::vector<double> d(static_cast<size_t>(n));
  double cur = x;
  for (int k = 0; k < n; ++k) {
    d[static_cast<size_t>(k)] = df(cur);
    cur = f(cur);
  }
  double prod = 1.0, amp = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    amp += std::fabs(prod);
    prod *= d[static_cast<size_t>(k)];
  }
  return {cur - x, prod - 1.0, amp};
}

// Residual acceptance for roots of F^n - id: structural tolerance plus the
// binary64 noise floor of the n-fold evaluation (per-step rounding of
// magnitude ~ eps * scale, amplified by the derivative tail). Without the
// second term, points with large orbit multipliers could never pass.
inline double periodic_accept(double x, double amp, double scale) {
  return 1e-11 * (1.0 + std::fabs(x)) +
         64.0 * std::numeric_limits<double>::epsilon() * amp * scale;
}

// After acceptance, push the residual toward its quadratic-convergence floor
// so downstream periodicity re-checks at tighter tolerances still pass.
template <class F, class DF>
double squeeze_residual(F&& f, DF&& df, int n, double x) {
  double best = x;
  double best_res = std::fabs(eval_power(f, df, x, n).value);
  for (int it = 0; it < 6; ++it) {
    PowerEval e = eval_power(f, df, best, n);
    if (e.deriv == 0.0) break;
    double next = best - e.value / e.deriv;
    double res = std::fabs(eval_power(f, df, next, n).value);
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

// Bracketed root of F^n(x) = x: bisect to width 1e-8, then Newton steps kept
// inside the shrinking bracket. `scale` is the characteristic magnitude of
// the iterates (for the noise floor).
template <class F, class DF>
double polish_periodic(F&& f, DF&& df, int n, double lo, double hi, double scale) {
  double flo = power_delta(f, lo, n);
  if (flo == 0.0) return lo;
  double fhi = power_delta(f, hi, n);
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    // cylinder brackets can collapse below ulp for long words; the midpoint
    // then already carries all the precision a double can hold
    if (hi - lo <= 1e-12 * (1.0 + std::fabs(lo))) return 0.5 * (lo + hi);
    throw convergence_error("no-bracket: F^n - id has equal signs at both bracket ends");
  }
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = power_delta(f, mid, n);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    PowerEval e = eval_power(f, df, x, n);
    if (std::fabs(e.value) <= periodic_accept(x, e.amp, scale))
      return squeeze_residual(f, df, n, x);
    if ((e.value < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = e.value;
    } else {
      hi = x;
    }
    double next = (e.deriv != 0.0) ? x - e.value / e.deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi) || next == x) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  PowerEval e = eval_power(f, df, x, n);
  if (std::fabs(e.value) <= 4.0 * periodic_accept(x, e.amp, scale))
    return squeeze_residual(f, df, n, x);
  throw convergence_error("root-polish-failed: |F^n(x) - x| stayed above tolerance");
}

// Unbracketed Newton refinement for seeds that are already close (cycle
// detection output); returns the best point visited, never throws.
template <class F, class DF>
double refine_periodic(F&& f, DF&& df, int n, double x0, double scale) {
  double best = x0;
  double best_res = std::fabs(eval_power(f, df, x0, n).value);
  double x = x0;
  for (int it = 0; it < 40; ++it) {
    PowerEval e = eval_power(f, df, x, n);
    if (std::fabs(e.value) < best_res) {
      best = x;
      best_res = std::fabs(e.value);
    }
    if (e.deriv == 0.0) break;
    double step = e.value / e.deriv;
    if (!(std::fabs(step) <= 0.05 * scale)) break;  // diverging: keep the seed
    x -= step;
    if (std::fabs(step) <= 1e-14 * (1.0 + std::fabs(x))) {
      if (std::fabs(eval_power(f, df, x, n).value) < best_res) best = x;
      break;
    }
  }
  return best;
}

}  // namespace replimap::detail
