#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "replimap/map_core.hpp"
#include "replimap/params.hpp"

namespace replimap {

struct PeriodicOrbit {
  int period = 0;                // least period
  std::vector<double> points;    // sorted ascending, one per orbit point
  double multiplier = 0.0;       // product of f' over the orbit
  double mean = 0.0;             // (sum of points) / period
  Stability stability = Stability::neutral;
  bool aperiodic = false;        // attractor detection may tag a window sample instead
  double lyapunov = std::numeric_limits<double>::quiet_NaN();  // attractor reports only
};

struct BifurcationSample {
  double a;
  std::vector<double> attractor_points;
  int detected_period;  // 0 when aperiodic
  bool aperiodic;
  double lyapunov;
  int branch;  // 0: seeded at x_max, 1: seeded at x_min
};

// a0(b) = 2/(b(1-b)), where the interior multiplier 1 - a b(1-b) crosses -1.
double period_doubling_threshold(double b);

// All orbits of least period exactly n. The scan runs in the y-coordinate
// over the absorbing range [g_min, g_max] (h-image of [f_min, f_max]); points
// are mapped back through h_inv for output. grid >= 10 n; default 2048 n.
std::vector<PeriodicOrbit> find_periodic_orbits(const Params& p, int n, long grid = 0);

// The unique period-2 orbit {p_a, q_a}, 0 < p_a < b < q_a < 1, for
// a > period_doubling_threshold(b).
PeriodicOrbit period2_orbit(const Params& p);

// Iterates both critical orbits `transient` steps, then detects a cycle of
// period <= max_period by recurrence within 1e-9 verified across the whole
// sampled window; returns 0-2 distinct attracting orbits and/or aperiodic
// tags carrying Lyapunov estimates.
std::vector<PeriodicOrbit> attractors_from_critical_orbits(const Params& p, long transient,
                                                           int max_period);

// (1/n) Sum ln|f'(x_k)| after discarding `transient` steps, accumulated via
// the telescoped form ln t_n - ln t_0 + Sum ln|1 - a t_k| (t = x(1-x)),
// which stays finite for orbits passing exponentially close to 0/1.
double lyapunov_exponent(const Params& p, double x0, long n, long transient);

// Attractor scan over an a-grid at fixed b; deterministic; one sample per
// distinct attractor per a, rows ordered by a ascending.
std::vector<BifurcationSample> bifurcation_scan(double b, double a_lo, double a_hi, int steps,
                                                int samples, long transient = 10000,
                                                int max_period = 64);

// Generic interval map for the class-M searches: plain-coordinate search on
// [lo, hi]. fprime may be empty (centered finite differences then).
struct Map1D {
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  double lo = 0.0, hi = 1.0;
  std::string warning;  // non-fatal spec-validation notes (domain non-invariance)
};

std::vector<PeriodicOrbit> find_periodic_orbits_map(const Map1D& m, int n, long grid = 0);

}  // namespace replimap
