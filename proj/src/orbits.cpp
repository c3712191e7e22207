#include "replimap/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "iterate_roots.hpp"
#include "replimap/conjugacy.hpp"
#include "replimap/errors.hpp"

namespace replimap {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// search machinery shared by the replicator (y-coordinate) and generic paths
struct EngineMap {
  std::function<double(double)> f;
  std::function<double(double)> df;
  double lo, hi;
  double scale;  // iterate magnitude, for the residual noise floor
};

std::function<double(double)> guard(std::function<double(double)> f) {
  return [f = std::move(f)](double x) {
    try {
      double v = f(x);
      return std::isfinite(v) ? v : kNan;
    } catch (const error&) {
      return kNan;
    }
  };
}

// cycles of least period exactly n, points in iteration order
std::vector<std::vector<double>> find_cycles(const EngineMap& em, int n, long grid) {
  std::vector<double> roots;
  double px = em.lo;
  double pv = detail::power_delta(em.f, px, n);
  for (long i = 1; i <= grid; ++i) {
    double x = em.lo + (em.hi - em.lo) * static_cast<double>(i) / static_cast<double>(grid);
    double v = detail::power_delta(em.f, x, n);
    if (std::isfinite(v) && v == 0.0) {
      roots.push_back(x);
    } else if (std::isfinite(pv) && std::isfinite(v) && pv != 0.0 && v != 0.0 &&
               (pv < 0.0) != (v < 0.0)) {
      try {
        roots.push_back(detail::polish_periodic(em.f, em.df, n, px, x, em.scale));
      } catch (const error&) {
        // unpolishable bracket (tangency-grade); drop it
      }
    }
    px = x;
    pv = v;
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> uniq;
  for (double r : roots)
    if (uniq.empty() || r - uniq.back() > 1e-9 * (1.0 + std::fabs(r))) uniq.push_back(r);

  std::vector<char> used(uniq.size(), 0);
  std::vector<std::vector<double>> cycles;
  for (size_t i = 0; i < uniq.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    std::vector<double> cyc{uniq[i]};
    bool bad = false;
    double cur = uniq[i];
    for (int k = 1; k < n; ++k) {
      cur = em.f(cur);
      if (!std::isfinite(cur)) {
        bad = true;
        break;
      }
      // snap iterates onto polished roots: marks them used and removes drift
      auto it = std::lower_bound(uniq.begin(), uniq.end(), cur);
      size_t j = static_cast<size_t>(it - uniq.begin());
      size_t best = uniq.size();
      if (j < uniq.size()) best = j;
      if (j > 0 && (best == uniq.size() || cur - uniq[j - 1] < uniq[j] - cur)) best = j - 1;
      if (best < uniq.size() && std::fabs(uniq[best] - cur) <= 1e-6 * (1.0 + std::fabs(cur))) {
        cur = uniq[best];
        used[best] = 1;
      }
      cyc.push_back(cur);
    }
    if (bad) continue;
    // least-period collapse at a loose tolerance: near neutral parameters
    // F^n - id is cubically flat and root polishing cannot separate a ghost
    // n-cycle from the fixed point underneath it
    int least = n;
    for (int d = 1; d < n; ++d) {
      if (n % d) continue;
      bool per = true;
      for (int k = 0; k + d < n && per; ++k)
        per = std::fabs(cyc[static_cast<size_t>(k + d)] - cyc[static_cast<size_t>(k)]) <=
              1e-5 * (1.0 + std::fabs(cyc[static_cast<size_t>(k)]));
      if (per) {
        least = d;
        break;
      }
    }
    if (least < n) continue;
    // a least-period-n cycle visits n pairwise-distinct points; a
    // near-homoclinic pseudo-root threading a shorter orbit gets its middle
    // iterates snapped onto that orbit's root, which the divisor test above
    // cannot see (the repeats sit at non-divisor offsets)
    bool repeated = false;
    for (size_t u = 0; u + 1 < cyc.size() && !repeated; ++u)
      for (size_t v = u + 1; v < cyc.size(); ++v)
        if (std::fabs(cyc[u] - cyc[v]) <= 1e-9 * (1.0 + std::fabs(cyc[u]))) {
          repeated = true;
          break;
        }
    if (repeated) continue;
    cycles.push_back(std::move(cyc));
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const std::vector<double>& u, const std::vector<double>& v) {
              return *std::min_element(u.begin(), u.end()) <
                     *std::min_element(v.begin(), v.end());
            });
  std::vector<std::vector<double>> out;
  for (auto& cyc : cycles) {
    double mn = *std::min_element(cyc.begin(), cyc.end());
    if (!out.empty()) {
      double prev = *std::min_element(out.back().begin(), out.back().end());
      if (std::fabs(mn - prev) <= 1e-7 * (1.0 + std::fabs(mn))) continue;
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

double log_t_of_y(double y) {
  // ln(x(1-x)) with x = h_inv(y); stays finite for |y| up to ~1e308
  double ay = std::fabs(y);
  return -(ay + 2.0 * std::log1p(std::exp(-ay)));
}

// (1/n) sum ln|f'| along the orbit of y, telescoped through the conjugacy so
// orbits hugging x=0/1 cost no precision:
//   sum ln|f'(x_k)| = ln t_n - ln t_0 + sum ln|1 - a t_k|,  t = x(1-x)
double lyapunov_from_y(const Params& p, double y, long n) {
  double lnt0 = log_t_of_y(y);
  double sum = 0.0;
  for (long k = 0; k < n; ++k) {
    double t = h_inv(y) * h_inv(-y);
    double q = 1.0 - p.a * t;
    if (q == 0.0) {  // iterate sits exactly on a critical point: nudge it off
      y += 1e-15 * (1.0 + std::fabs(y));
      t = h_inv(y) * h_inv(-y);
      q = 1.0 - p.a * t;
    }
    sum += std::log(std::fabs(q));
    y = eval_g(p, y);
  }
  return (log_t_of_y(y) - lnt0 + sum) / static_cast<double>(n);
}

// transient + windowed recurrence detection from one critical seed (whole
// window must recur: nearly-coincident points of long cycles would fool any
// single-sample comparison)
PeriodicOrbit detect_from_seed(const Params& p, double y0, long transient, int max_period) {
  double y = y0;
  for (long i = 0; i < transient; ++i) y = eval_g(p, y);
  int wlen = 2 * max_period + 1;
  std::vector<double> w(static_cast<size_t>(wlen));
  for (int i = 0; i < wlen; ++i) {
    w[static_cast<size_t>(i)] = y;
    y = eval_g(p, y);
  }
  int d = 0;
  for (int cand = 1; cand <= max_period && !d; ++cand) {
    bool rec = true;
    for (int k = 0; k + cand < wlen && rec; ++k)
      rec = std::fabs(w[static_cast<size_t>(k + cand)] - w[static_cast<size_t>(k)]) <=
            1e-9 * (1.0 + std::fabs(w[static_cast<size_t>(k)]));
    if (rec) d = cand;
  }
  PeriodicOrbit o;
  const Params cp = p;
  auto g = [cp](double yy) { return eval_g(cp, yy); };
  auto gp = [cp](double yy) { return eval_g_prime(cp, yy); };
  if (d) {
    o.period = d;
    double mult = 1.0, mean = 0.0;
    for (int k = 0; k < d; ++k) {
      double yk = detail::refine_periodic(g, gp, d, w[static_cast<size_t>(k)],
                                          1.0 + p.a + std::fabs(w[static_cast<size_t>(k)]));
      mult *= eval_g_prime(p, yk);
      double x = h_inv(yk);
      o.points.push_back(x);
      mean += x;
    }
    std::sort(o.points.begin(), o.points.end());
    o.multiplier = mult;
    o.mean = mean / d;
    o.stability = classify_multiplier(mult);
    o.lyapunov = std::log(std::fabs(mult)) / d;
    return o;
  }
  o.period = 0;
  o.aperiodic = true;
  o.stability = Stability::neutral;
  o.multiplier = kNan;
  o.lyapunov = lyapunov_from_y(p, w[0], 10000);
  int keep = std::min(wlen, 64);
  double mean = 0.0;
  for (int k = 0; k < keep; ++k) {
    double x = h_inv(w[static_cast<size_t>(k)]);
    o.points.push_back(x);
    mean += x;
  }
  std::sort(o.points.begin(), o.points.end());
  o.mean = mean / keep;
  return o;
}

}  // namespace

double period_doubling_threshold(double b) {
  if (!(b > 0.0 && b < 1.0))
    throw domain_error("invalid-params: b=" + std::to_string(b) + " must be in (0,1)");
  return 2.0 / (b * (1.0 - b));
}

std::vector<PeriodicOrbit> find_periodic_orbits(const Params& p, int n, long grid) {
  if (n < 1) throw domain_error("invalid-count: period must be >= 1");
  if (grid == 0) grid = 2048L * n;
  if (grid < 10L * n) throw domain_error("invalid-grid: need at least 10 points per period");
  double ylo, yhi;
  if (p.a > 4.0) {
    // one iterate maps (0,1) into [f_min, f_max]; in y that is [g_min, g_max]
    GCriticalData d = g_critical_data(p);
    double pad = 1e-6 * (1.0 + std::max(std::fabs(d.g_min), std::fabs(d.g_max)));
    ylo = d.g_min - pad;
    yhi = d.g_max + pad;
  } else {
    yhi = h(1e-9);  // monotone regime: fixed points only, scan a wide slab
    ylo = -yhi;
  }
  const Params cp = p;
  EngineMap em{[cp](double y) { return eval_g(cp, y); },
               [cp](double y) { return eval_g_prime(cp, y); }, ylo, yhi,
               1.0 + cp.a + std::max(std::fabs(ylo), std::fabs(yhi))};
  std::vector<PeriodicOrbit> out;
  for (auto& cyc : find_cycles(em, n, grid)) {
    PeriodicOrbit o;
    o.period = n;
    double mult = 1.0, mean = 0.0;
    o.points.reserve(static_cast<size_t>(n));
    for (double y : cyc) {
      mult *= eval_g_prime(p, y);
      double x = h_inv(y);
      o.points.push_back(x);
      mean += x;
    }
    std::sort(o.points.begin(), o.points.end());
    o.multiplier = mult;
    o.mean = mean / n;
    o.stability = classify_multiplier(mult);
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const PeriodicOrbit& u, const PeriodicOrbit& v) {
    return u.points.front() < v.points.front();
  });
  return out;
}

PeriodicOrbit period2_orbit(const Params& p) {
  double a0 = period_doubling_threshold(p.b);
  if (!(p.a > a0))
    throw precondition_failed("fixed-point-stable: a=" + std::to_string(p.a) +
                              " is not above the period-doubling threshold " +
                              std::to_string(a0));
  std::vector<PeriodicOrbit> orbs = find_periodic_orbits(p, 2, 0);
  const PeriodicOrbit* pick = nullptr;
  for (const PeriodicOrbit& o : orbs) {
    // the flip-born orbit straddles b; prefer the innermost straddling pair
    if (o.points.front() < p.b && o.points.back() > p.b &&
        (!pick || o.points.front() > pick->points.front()))
      pick = &o;
  }
  if (!pick) throw convergence_error("period2-not-found: no straddling period-2 orbit located");
  return *pick;
}

std::vector<PeriodicOrbit> attractors_from_critical_orbits(const Params& p, long transient,
                                                           int max_period) {
  if (!(p.a > 4.0))
    throw monotone_regime_error("a=" + std::to_string(p.a) +
                                " <= 4 has no critical orbits to follow");
  if (transient < 0) throw domain_error("invalid-count: transient must be >= 0");
  if (max_period < 1) throw domain_error("invalid-count: max_period must be >= 1");
  GCriticalData d = g_critical_data(p);
  // h reverses order: the x_max orbit is the y_min orbit and vice versa
  PeriodicOrbit r0 = detect_from_seed(p, d.y_min, transient, max_period);
  PeriodicOrbit r1 = detect_from_seed(p, d.y_max, transient, max_period);
  std::vector<PeriodicOrbit> out{r0};
  bool same = !r0.aperiodic && !r1.aperiodic && r0.period == r1.period &&
              std::fabs(r0.points.front() - r1.points.front()) <=
                  1e-7 * (1.0 + std::fabs(r0.points.front()));
  if (!same) out.push_back(r1);
  return out;
}

double lyapunov_exponent(const Params& p, double x0, long n, long transient) {
  if (!(x0 > 0.0 && x0 < 1.0))
    throw domain_error("invalid-x: x0=" + std::to_string(x0) + " must be in (0,1)");
  if (n < 1000) throw domain_error("invalid-count: need n >= 1000 for a stable average");
  if (transient < 0) throw domain_error("invalid-count: transient must be >= 0");
  double y = h(x0);
  for (long i = 0; i < transient; ++i) y = eval_g(p, y);
  return lyapunov_from_y(p, y, n);
}

std::vector<BifurcationSample> bifurcation_scan(double b, double a_lo, double a_hi, int steps,
                                                int samples, long transient, int max_period) {
  if (!(b > 0.0 && b < 1.0))
    throw domain_error("invalid-params: b=" + std::to_string(b) + " must be in (0,1)");
  if (!(4.0 < a_lo && a_lo < a_hi))
    throw domain_error("invalid-range: need 4 < a_lo < a_hi");
  if (steps < 2) throw domain_error("invalid-count: steps must be >= 2");
  if (samples < 1) throw domain_error("invalid-count: samples must be >= 1");
  std::vector<BifurcationSample> out;
  out.reserve(2u * static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    double a = a_lo + (a_hi - a_lo) * static_cast<double>(i) / (steps - 1.0);
    Params p(a, b);
    GCriticalData d = g_critical_data(p);
    for (int branch = 0; branch < 2; ++branch) {
      PeriodicOrbit r =
          detect_from_seed(p, branch == 0 ? d.y_min : d.y_max, transient, max_period);
      BifurcationSample s;
      s.a = a;
      s.branch = branch;
      s.aperiodic = r.aperiodic;
      s.detected_period = r.aperiodic ? 0 : r.period;
      s.lyapunov = r.lyapunov;
      size_t keep = std::min(r.points.size(), static_cast<size_t>(samples));
      s.attractor_points.assign(r.points.begin(), r.points.begin() + static_cast<long>(keep));
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<PeriodicOrbit> find_periodic_orbits_map(const Map1D& m, int n, long grid) {
  if (n < 1) throw domain_error("invalid-count: period must be >= 1");
  if (!(m.lo < m.hi)) throw domain_error("invalid-range: need lo < hi");
  if (!m.f) throw domain_error("invalid-map: no map function supplied");
  if (grid == 0) grid = 2048L * n;
  if (grid < 10L * n) throw domain_error("invalid-grid: need at least 10 points per period");
  std::function<double(double)> f = guard(m.f);
  std::function<double(double)> df;
  if (m.fprime) {
    df = guard(m.fprime);
  } else {
    std::function<double(double)> base = m.f;
    df = guard([base](double x) {
      double e = 1e-6 * (1.0 + std::fabs(x));
      return (base(x + e) - base(x - e)) / (2.0 * e);
    });
  }
  EngineMap em{f, df, m.lo, m.hi, 1.0 + std::max(std::fabs(m.lo), std::fabs(m.hi))};
  std::vector<PeriodicOrbit> out;
  for (auto& cyc : find_cycles(em, n, grid)) {
    PeriodicOrbit o;
    o.period = n;
    double mult = 1.0, mean = 0.0;
    bool ok = true;
    for (double x : cyc) {
      double dv = df(x);
      if (!std::isfinite(dv)) {
        ok = false;
        break;
      }
      mult *= dv;
      mean += x;
      o.points.push_back(x);
    }
    if (!ok) continue;
    std::sort(o.points.begin(), o.points.end());
    o.multiplier = mult;
    o.mean = mean / n;
    o.stability = classify_multiplier(mult);
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const PeriodicOrbit& u, const PeriodicOrbit& v) {
    return u.points.front() < v.points.front();
  });
  return out;
}

}  // namespace replimap
