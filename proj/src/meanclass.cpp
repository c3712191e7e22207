#include "replimap/meanclass.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "replimap/conjugacy.hpp"
#include "replimap/errors.hpp"
#include "replimap/roots.hpp"

namespace replimap {
namespace {

std::function<double(double)> fd1(std::function<double(double)> F) {
  return [F = std::move(F)](double x) {
    double e = 1e-6 * (1.0 + std::fabs(x));
    return (F(x + e) - F(x - e)) / (2.0 * e);
  };
}

// Invert H at c. The sampling window brackets most targets; for the rest the
// bracket walks geometrically toward the open ends of I before giving up.
double invert_H(const MeanMapSpec& s, double c) {
  double ulo = s.grid_lo, uhi = s.grid_hi;
  double flo = s.H(ulo) - c, fhi = s.H(uhi) - c;
  for (int i = 0; i < 400; ++i) {
    if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) break;
    double nlo = std::isfinite(s.lo) ? s.lo + (ulo - s.lo) / 8.0
                                     : (ulo < -1.0 ? ulo * 8.0 : ulo - 8.0);
    double nhi = std::isfinite(s.hi) ? s.hi - (s.hi - uhi) / 8.0
                                     : (uhi > 1.0 ? uhi * 8.0 : uhi + 8.0);
    if (nlo == ulo && nhi == uhi) break;
    ulo = nlo;
    uhi = nhi;
    flo = s.H(ulo) - c;
    fhi = s.H(uhi) - c;
  }
  if (flo == 0.0) return ulo;
  if (fhi == 0.0) return uhi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo < 0.0) == (fhi < 0.0))
    throw domain_escape("target " + std::to_string(c) +
                        " is outside the range of H over its domain");
  std::function<double(double)> Hp = s.H_prime ? s.H_prime : fd1(s.H);
  // bisect to ulp resolution: a fixed-width stop under-resolves roots far
  // into a tail (x ~ e^{-a}), where Newton on a log-like H also overshoots
  return solve_monotone([&](double u) { return s.H(u); }, [&](double u) { return Hp(u); }, ulo,
                        uhi, c, 0.0, 60, 1e-12);
}

}  // namespace

Map1D make_map_from_H(const MeanMapSpec& s) {
  if (!s.H) throw domain_error("invalid-spec: potential H is required");
  if (!(s.lo < s.hi)) throw domain_error("invalid-spec: need lo < hi");
  if (!std::isfinite(s.grid_lo) || !std::isfinite(s.grid_hi) || !(s.grid_lo < s.grid_hi) ||
      s.grid_lo < s.lo || s.grid_hi > s.hi)
    throw domain_error("invalid-spec: sampling window must be a finite sub-interval of the domain");
  if (!std::isfinite(s.b)) throw domain_error("invalid-params: b must be finite");

  const int m = 256;
  double prev = s.H(s.grid_lo);
  for (int i = 1; i <= m; ++i) {
    double x = s.grid_lo + (s.grid_hi - s.grid_lo) * i / static_cast<double>(m);
    double v = s.H(x);
    if (!std::isfinite(v) || !std::isfinite(prev))
      throw domain_error("invalid-spec: H is not finite on the sampling window");
    if (v == prev || (v > prev) != s.increasing)
      throw domain_error("invalid-spec: H is not strictly " +
                         std::string(s.increasing ? "increasing" : "decreasing") + " near x=" +
                         std::to_string(x));
    if (s.H_inv) {
      double back = s.H_inv(v);
      if (!(std::fabs(back - x) <= 1e-9 * (1.0 + std::fabs(x))))
        throw domain_error("invalid-spec: H_inv(H(x)) is off by " +
                           std::to_string(std::fabs(back - x)) + " at x=" + std::to_string(x));
    }
    prev = v;
  }

  const MeanMapSpec spec = s;
  std::function<double(double)> f = [spec](double x) {
    if (!(x > spec.lo && x < spec.hi))
      throw domain_error("invalid-x: x=" + std::to_string(x) + " is outside the domain");
    double u = spec.H(x) + x - spec.b;
    if (spec.H_inv) {
      double v = spec.H_inv(u);
      if (!std::isfinite(v) || !(v > spec.lo && v < spec.hi))
        throw domain_escape("H(x)+x-b=" + std::to_string(u) +
                            " leaves the range of H at x=" + std::to_string(x));
      return v;
    }
    return invert_H(spec, u);
  };
  std::function<double(double)> fp;
  if (spec.H_prime) {
    // H(f) = H(x) + x - b  =>  f'(x) = (H'(x) + 1) / H'(f(x))
    fp = [spec, f](double x) { return (spec.H_prime(x) + 1.0) / spec.H_prime(f(x)); };
  } else {
    fp = [f](double x) {
      double e = 1e-7 * (1.0 + std::fabs(x));
      return (f(x + e) - f(x - e)) / (2.0 * e);
    };
  }

  Map1D out;
  out.f = f;
  out.fprime = fp;
  out.lo = spec.grid_lo;
  out.hi = spec.grid_hi;
  for (int i = 0; i <= m; ++i) {
    double x = spec.grid_lo + (spec.grid_hi - spec.grid_lo) * i / static_cast<double>(m);
    try {
      f(x);
    } catch (const error& e) {
      out.warning = e.what();
      break;
    }
  }
  return out;
}

double verify_cohomology(const MeanMapSpec& s, long grid) {
  if (grid < 2) throw domain_error("invalid-grid: need at least 2 mesh points");
  Map1D m = make_map_from_H(s);
  double worst = 0.0;
  for (long i = 0; i < grid; ++i) {
    double x = s.grid_lo + (s.grid_hi - s.grid_lo) * static_cast<double>(i) / (grid - 1.0);
    double fx = m.f(x);
    worst = std::max(worst, std::fabs(s.H(fx) - s.H(x) - (x - s.b)));
  }
  return worst;
}

double orbit_mean_check(const MeanMapSpec& s, const PeriodicOrbit& orbit) {
  if (orbit.period < 1 || orbit.points.size() != static_cast<size_t>(orbit.period))
    throw domain_error("invalid-orbit: period " + std::to_string(orbit.period) + " with " +
                       std::to_string(orbit.points.size()) + " points");
  Map1D m = make_map_from_H(s);
  double mean = 0.0;
  for (double x0 : orbit.points) {
    double x = x0;
    for (int k = 0; k < orbit.period; ++k) x = m.f(x);
    if (!(std::fabs(x - x0) <= 1e-10 * (1.0 + std::fabs(x0))))
      throw not_periodic("point x=" + std::to_string(x0) + " returns to " + std::to_string(x) +
                         " after " + std::to_string(orbit.period) + " steps");
    mean += x0;
  }
  return std::fabs(mean / orbit.period - s.b);
}

BirkhoffReport birkhoff_average(const MeanMapSpec& s, double x0, long n) {
  if (n < 1) throw domain_error("invalid-count: need n >= 1");
  Map1D m = make_map_from_H(s);
  double x = x0, sum = 0.0;
  for (long j = 0; j < n; ++j) {
    sum += x;
    x = m.f(x);
  }
  return {sum / static_cast<double>(n), (s.H(x) - s.H(x0)) / static_cast<double>(n)};
}

MeanMapSpec perturbed_chaotic_member(const Params& base, std::function<double(double)> H_tilde,
                                     std::function<double(double)> H_tilde_prime, double delta) {
  if (!H_tilde || !H_tilde_prime)
    throw domain_error("invalid-spec: potential and derivative are both required");
  if (!(delta > 0.0)) throw domain_error("invalid-params: delta must be positive");
  HorseshoeCertificate cert = certify(base);
  if (!cert.valid)
    throw certificate_required("base parameters are not certified (" + cert.first_failing + ")");
  // absorbing interval in x is the image of the critical values (h reverses order)
  GCriticalData d = g_critical_data(base);
  double xlo = h_inv(d.g_max), xhi = h_inv(d.g_min);
  const long m = 10000;
  double worst = 0.0;
  for (long i = 0; i <= m; ++i) {
    double x = xlo + (xhi - xlo) * static_cast<double>(i) / static_cast<double>(m);
    double hp = H_tilde_prime(x);
    if (!(hp < 0.0))
      throw not_close("potential is not strictly decreasing on the absorbing interval (H'=" +
                      std::to_string(hp) + " at x=" + std::to_string(x) + ")");
    double ref = h(x) / base.a;
    double refp = -1.0 / (base.a * x * (1.0 - x));
    worst = std::max(worst, std::max(std::fabs(H_tilde(x) - ref), std::fabs(hp - refp)));
  }
  if (worst > delta)
    throw not_close("perturbation size " + std::to_string(worst) + " exceeds delta=" +
                    std::to_string(delta) + " on the absorbing interval");
  MeanMapSpec s;
  s.name = "perturbed";
  s.H = std::move(H_tilde);
  s.H_prime = std::move(H_tilde_prime);
  s.b = base.b;
  s.lo = 0.0;
  s.hi = 1.0;
  s.grid_lo = 1e-6;
  s.grid_hi = 1.0 - 1e-6;
  s.increasing = false;
  return s;
}

HorseshoeCertificate certify_spec(const Params& base, const MeanMapSpec& s) {
  HorseshoeCertificate bad{base};
  if (!s.H || s.increasing) {
    bad.first_failing = "chart-requires-decreasing-potential";
    return bad;
  }
  if (!(s.b > 0.0 && s.b < 1.0)) {
    bad.first_failing = "invalid-params: chart shift b=" + std::to_string(s.b) + " not in (0,1)";
    return bad;
  }
  const double a = base.a;
  if (!(a > 4.0)) {
    bad.first_failing = "monotone-regime: a=" + std::to_string(a) + " <= 4";
    return bad;
  }
  std::function<double(double)> Hp = s.H_prime ? s.H_prime : fd1(s.H);
  // chart y = a H(x): G(y) = y + a H^{-1}(y/a) - a b, critical where H' = -1
  double split = 0.5 * (s.grid_lo + s.grid_hi);
  double x1, x2;
  try {
    x1 = bisect_root([&](double x) { return Hp(x) + 1.0; }, s.grid_lo, split, 0.0);
    x2 = bisect_root([&](double x) { return Hp(x) + 1.0; }, split, s.grid_hi, 0.0);
  } catch (const error& e) {
    bad.first_failing = std::string("chart-critical-points-not-found: ") + e.what();
    return bad;
  }
  double ymin_c = a * s.H(x1);  // H decreasing: the left critical x is the G-minimum
  double ymax_c = a * s.H(x2);
  if (!(ymax_c < ymin_c)) {
    bad.first_failing = "chart-critical-points-not-found: degenerate ordering";
    return bad;
  }
  std::function<double(double)> invf;
  if (s.H_inv) {
    invf = s.H_inv;
  } else {
    const MeanMapSpec cap = s;
    invf = [cap](double c) { return invert_H(cap, c); };
  }
  const double bb = s.b;
  GChart chart;
  chart.g = [invf, a, bb](double y) { return y + a * invf(y / a) - a * bb; };
  chart.g_prime = [invf, Hp, a](double y) { return 1.0 + 1.0 / Hp(invf(y / a)); };
  chart.y_max = ymax_c;
  chart.y_min = ymin_c;
  chart.bracket_hi = ymin_c + a;
  return certify_chart(Params(a, s.b), chart);
}

MeanMapSpec replicator_family(double a, double b) {
  Params p(a, b);
  MeanMapSpec s;
  s.name = "replicator";
  s.H = [a](double x) { return h(x) / a; };
  s.H_inv = [a](double u) { return h_inv(a * u); };
  s.H_prime = [a](double x) { return -1.0 / (a * x * (1.0 - x)); };
  s.b = p.b;
  s.lo = 0.0;
  s.hi = 1.0;
  s.grid_lo = 1e-6;
  s.grid_hi = 1.0 - 1e-6;
  s.increasing = false;
  return s;
}

MeanMapSpec ricker_family(double b) {
  if (!std::isfinite(b)) throw domain_error("invalid-params: b must be finite");
  MeanMapSpec s;
  s.name = "ricker";
  s.H = [](double x) { return -std::log(x); };
  s.H_inv = [](double u) { return std::exp(-u); };
  s.H_prime = [](double x) { return -1.0 / x; };
  s.b = b;
  s.lo = 0.0;
  s.hi = std::numeric_limits<double>::infinity();
  s.grid_lo = 1e-6;
  s.grid_hi = std::max(2.0, std::exp(b - 1.0) + 1.0);  // f peaks at e^{b-1}
  s.increasing = false;
  return s;
}

MeanMapSpec arctan_family(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw domain_error("invalid-params: a=" + std::to_string(a) + " must be positive");
  if (!std::isfinite(b)) throw domain_error("invalid-params: b must be finite");
  const double half = std::acos(-1.0) / 2.0;
  MeanMapSpec s;
  s.name = "arctan";
  s.H = [a](double x) { return -std::tan(x) / a; };
  s.H_inv = [a](double u) { return std::atan(-a * u); };
  s.H_prime = [a](double x) {
    double c = std::cos(x);
    return -1.0 / (a * c * c);
  };
  s.b = b;
  s.lo = -half;
  s.hi = half;
  s.grid_lo = -(half - 0.05);
  s.grid_hi = half - 0.05;
  s.increasing = false;
  return s;
}

MeanMapSpec probit_family(double b) {
  if (!std::isfinite(b)) throw domain_error("invalid-params: b must be finite");
  const double r2 = std::sqrt(2.0);
  MeanMapSpec s;
  s.name = "probit";
  s.H = [r2](double x) { return -r2 * boost::math::erfc_inv(2.0 * x); };
  s.H_inv = [r2](double u) { return 0.5 * std::erfc(-u / r2); };
  s.H_prime = [r2](double x) {
    double z = -r2 * boost::math::erfc_inv(2.0 * x);
    return std::sqrt(2.0 * std::acos(-1.0)) * std::exp(0.5 * z * z);
  };
  s.b = b;
  s.lo = 0.0;
  s.hi = 1.0;
  s.grid_lo = 1e-4;
  s.grid_hi = 1.0 - 1e-4;
  s.increasing = true;
  return s;
}

MeanMapSpec make_builtin(const std::string& name, double a, double b) {
  if (name == "replicator") return replicator_family(a, b);
  if (name == "ricker") return ricker_family(b);
  if (name == "arctan") return arctan_family(a, b);
  if (name == "probit") return probit_family(b);
  throw domain_error("invalid-family: '" + name +
                     "' (expected replicator, ricker, arctan, or probit)");
}

}  // namespace replimap
