#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "replimap/errors.hpp"

namespace replimap {

// Root-finding scheme used throughout: bracketed bisection down to a fixed
// bracket width, then a short Newton polish projected into the bracket,
// accepting when |F(y) - target| <= tol * (1 + |target|).
//
// F must be continuous and strictly monotone on [lo, hi] with
// F(lo), F(hi) straddling target (else convergence_error "no-bracket").
template <class F, class DF>
double solve_monotone(F&& f, DF&& df, double lo, double hi, double target,
                      double bisect_width = 1e-8, int max_newton = 20, double tol = 1e-11) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw convergence_error("no-bracket: F(" + std::to_string(lo) + ") and F(" +
                            std::to_string(hi) + ") do not straddle target " +
                            std::to_string(target));
  while (hi - lo > bisect_width) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at ulp resolution
    double fm = f(mid) - target;
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }

  const double accept = tol * (1.0 + std::fabs(target));
  double y = 0.5 * (lo + hi);
  for (int i = 0; i < max_newton; ++i) {
    double fy = f(y) - target;
    if (std::fabs(fy) <= accept) return y;
    // keep the bracket current
    if ((fy < 0.0) == (flo < 0.0)) {
      lo = y;
      flo = fy;
    } else {
      hi = y;
    }
    double d = df(y);
    double ynext = (d != 0.0) ? y - fy / d : lo;  // force fallback when flat
    if (!(ynext > lo && ynext < hi)) ynext = 0.5 * (lo + hi);
    if (ynext == y) ynext = 0.5 * (lo + hi);
    y = ynext;
  }
  if (std::fabs(f(y) - target) <= accept) return y;
  // near-flat targets (e.g. near-critical landmarks): the bracket itself is the answer
  double mid = 0.5 * (lo + hi);
  if (std::fabs(f(mid) - target) <= accept) return mid;
  throw convergence_error("root-polish-failed: residual " +
                          std::to_string(std::fabs(f(mid) - target)) + " above tolerance " +
                          std::to_string(accept));
}

// Plain bisection to a requested bracket width; used where no cheap derivative
// exists (chart critical points). Same bracketing contract as solve_monotone.
template <class F>
double bisect_root(F&& f, double lo, double hi, double target, double width = 1e-13) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw convergence_error("no-bracket: bisect_root on [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  while (hi - lo > width) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid) - target;
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace replimap
