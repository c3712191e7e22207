#include "replimap/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "iterate_roots.hpp"
#include "replimap/conjugacy.hpp"
#include "replimap/errors.hpp"
#include "replimap/roots.hpp"

namespace replimap {
namespace {

constexpr double kMarginFloor = 1e-9;  // below this a certificate is inconclusive

std::string fmt(double v) { return std::to_string(v); }  // diagnostics only

// All symbolic work runs on the b < 1/2 orientation; for b > 1/2 inputs and
// outputs are reflected through y -> -y, using g_{a,1-b}(y) = -g_{a,b}(-y)
// (exact, including in floating point up to the shared subexpressions).
struct Picture {
  Params cp;       // canonical parameters (b < 1/2)
  bool reflected;
  HorseshoeCertificate cert;  // canonical-coordinate landmarks
};

Picture picture_for(const Params& p) {
  HorseshoeCertificate c = certify(p);
  if (!c.valid)
    throw certificate_required("no valid certificate at a=" + fmt(p.a) + ", b=" + fmt(p.b) +
                               " (" + c.first_failing + ")");
  return Picture{Params(p.a, c.reflected ? 1.0 - p.b : p.b), c.reflected, c};
}

Landmarks solve_landmarks(const GChart& ch) {
  const auto& g = ch.g;
  const auto& gp = ch.g_prime;
  double y2p = solve_monotone(g, gp, ch.y_min, ch.bracket_hi, ch.y_min);
  double y1m = solve_monotone(g, gp, ch.y_max, ch.y_min, y2p);
  // g(J1) must reach y2+ from above; nudge y1- down the decreasing branch by
  // an overshooting secant step so the covering holds one-sided while the
  // residual stays within the solver tolerance.
  for (int i = 0; i < 50 && g(y1m) < y2p; ++i) {
    double d = gp(y1m);
    if (d >= 0.0) break;
    y1m += 1.25 * (y2p - g(y1m)) / d;
  }
  double y1p = solve_monotone(g, gp, ch.y_max, ch.y_min, ch.y_max);
  double y2m = solve_monotone(g, gp, ch.y_min, y2p, ch.y_max);
  return {y1m, y1p, y2m, y2p};
}

// lexicographic generation without the public length cap (cylinders go to 40)
void gen_words(int n, bool cyclic, std::vector<ItineraryWord>& out) {
  std::string w;
  w.reserve(static_cast<size_t>(n));
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(w.size()) == n) {
      if (!cyclic || !(w.front() == '1' && w.back() == '1')) out.push_back({w, cyclic});
      return;
    }
    w.push_back('0');
    self(self);
    w.back() = '1';
    if (w.size() == 1 || w[w.size() - 2] != '1') self(self);
    w.pop_back();
  };
  rec(rec);
}

// maximal subinterval of J_{w0+1} whose first |w| symbols match w, by
// backward root-finding along the monotone branches (canonical coordinates)
CylinderInterval refine_canonical(const Params& cp, const HorseshoeCertificate& c,
                                  const std::string& w) {
  auto g = [&cp](double y) { return eval_g(cp, y); };
  auto gp = [&cp](double y) { return eval_g_prime(cp, y); };
  auto jlo = [&c](char s) { return s == '0' ? c.y1_minus : c.y2_minus; };
  auto jhi = [&c](char s) { return s == '0' ? c.y1_plus : c.y2_plus; };
  double lo = jlo(w.back());
  double hi = jhi(w.back());
  for (int i = static_cast<int>(w.size()) - 2; i >= 0; --i) {
    double blo = jlo(w[static_cast<size_t>(i)]);
    double bhi = jhi(w[static_cast<size_t>(i)]);
    double nlo, nhi;
    if (w[static_cast<size_t>(i)] == '0') {  // decreasing branch reverses order
      nlo = solve_monotone(g, gp, blo, bhi, hi);
      nhi = solve_monotone(g, gp, blo, bhi, lo);
    } else {
      nlo = solve_monotone(g, gp, blo, bhi, lo);
      nhi = solve_monotone(g, gp, blo, bhi, hi);
    }
    lo = std::max(blo, std::min(nlo, nhi));
    hi = std::min(bhi, std::max(nlo, nhi));
  }
  return {{w, false}, lo, hi};
}

}  // namespace

bool is_admissible(const std::string& symbols, bool cyclic) {
  if (symbols.empty()) return false;
  for (char c : symbols)
    if (c != '0' && c != '1') return false;
  for (size_t i = 0; i + 1 < symbols.size(); ++i)
    if (symbols[i] == '1' && symbols[i + 1] == '1') return false;
  if (cyclic && symbols.front() == '1' && symbols.back() == '1') return false;
  return true;
}

HorseshoeCertificate certify(const Params& p) {
  HorseshoeCertificate c{p};
  if (!(p.a > 4.0)) {
    c.first_failing = "monotone-regime: a=" + fmt(p.a) + " <= 4";
    return c;
  }
  if (p.b == 0.5) {
    c.first_failing = "b-equals-one-half: no horseshoe claim at the symmetric parameter";
    return c;
  }
  bool reflected = p.b > 0.5;
  Params cp(p.a, reflected ? 1.0 - p.b : p.b);
  GCriticalData d = g_critical_data(cp);
  GChart chart;
  chart.g = [cp](double y) { return eval_g(cp, y); };
  chart.g_prime = [cp](double y) { return eval_g_prime(cp, y); };
  chart.y_max = d.y_max;
  chart.y_min = d.y_min;
  chart.bracket_hi = d.y_min + cp.a;  // g(y) >= y - ab, so g is above y_min there
  c = certify_chart(p, chart);
  c.reflected = reflected;
  return c;
}

HorseshoeCertificate certify_chart(const Params& p, const GChart& chart) {
  HorseshoeCertificate c{p};
  c.y_max = chart.y_max;
  c.y_min = chart.y_min;
  c.g_min = chart.g(chart.y_min);
  c.g_max = chart.g(chart.y_max);
  c.margin1 = c.y_max - c.g_min;
  c.margin2 = c.g_max - c.y_min;
  c.margin3 = chart.g(c.g_max) - c.y_min;
  const char* names[3] = {"eq9-inequality-1-failed", "eq9-inequality-2-failed",
                          "eq9-inequality-3-failed"};
  const double margins[3] = {c.margin1, c.margin2, c.margin3};
  for (int i = 0; i < 3; ++i) {
    if (!(margins[i] > kMarginFloor)) {
      c.first_failing = std::string(names[i]) + ", margin=" + fmt(margins[i]);
      return c;
    }
  }
  Landmarks lm;
  try {
    lm = solve_landmarks(chart);
  } catch (const error& e) {
    c.first_failing = std::string("landmark-solve-failed: ") + e.what();
    return c;
  }
  c.y1_minus = lm.y1_minus;
  c.y1_plus = lm.y1_plus;
  c.y2_minus = lm.y2_minus;
  c.y2_plus = lm.y2_plus;
  if (!(c.y_max < lm.y1_minus && lm.y1_minus < lm.y1_plus && lm.y1_plus < c.y_min &&
        c.y_min < lm.y2_minus && lm.y2_minus < lm.y2_plus)) {
    c.first_failing = "landmark-ordering-violated";
    return c;
  }
  // Covering relations at interval endpoints (piecewise monotonicity does the
  // rest): g(J1) covers J1 u J2, g(J2) covers J1 and stays clear of J2.
  double gy1m = chart.g(lm.y1_minus);
  double gy1p = chart.g(lm.y1_plus);
  double gy2m = chart.g(lm.y2_minus);
  double gy2p = chart.g(lm.y2_plus);
  struct Check {
    const char* name;
    double margin;
  } checks[] = {
      {"covering-J1-left-failed", lm.y1_minus - gy1p},
      {"covering-J2-left-failed", lm.y1_minus - gy2m},
      {"covering-J2-right-failed", gy2p - lm.y1_plus},
      {"covering-J2-separation-failed", lm.y2_minus - gy2p},
  };
  for (const Check& k : checks) {
    if (!(k.margin >= kMarginFloor)) {
      c.first_failing = std::string(k.name) + ", margin=" + fmt(k.margin);
      return c;
    }
  }
  // construction-tight endpoint: one-sided by the nudge in solve_landmarks
  if (!(gy1m >= lm.y2_plus)) {
    c.first_failing = "covering-J1-right-failed, margin=" + fmt(gy1m - lm.y2_plus);
    return c;
  }
  c.expansion = std::min(std::fabs(chart.g_prime(lm.y1_minus)),
                         std::fabs(chart.g_prime(lm.y1_plus))) *
                chart.g_prime(lm.y2_minus);
  if (!(c.expansion > 1.0 + kMarginFloor)) {
    c.first_failing = "expansion-not-above-one, value=" + fmt(c.expansion);
    return c;
  }
  c.valid = true;
  return c;
}

Landmarks landmark_points(const Params& p) {
  HorseshoeCertificate c = certify(p);
  bool have = c.valid || c.first_failing.rfind("covering-", 0) == 0 ||
              c.first_failing.rfind("expansion-", 0) == 0;
  if (have) return {c.y1_minus, c.y1_plus, c.y2_minus, c.y2_plus};
  if (c.first_failing.rfind("landmark-solve-failed", 0) == 0)
    throw convergence_error(c.first_failing);
  throw precondition_failed(c.first_failing);
}

double min_certified_a(double b, double tol) {
  if (!(b > 0.0 && b < 1.0))
    throw domain_error("invalid-params: b=" + fmt(b) + " must be in (0,1)");
  if (b == 0.5) throw precondition_failed("b-equals-one-half: no certified a exists");
  if (!(tol > 0.0)) throw domain_error("invalid-tol: tol=" + fmt(tol) + " must be > 0");
  auto ok = [b](double a) { return certify(Params(a, b)).valid; };
  double lo = 4.0, hi = 8.0;
  while (!ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (lo >= 1e6)
      throw not_found("no certified a <= 1e6 for b=" + fmt(b));
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<ItineraryWord> enumerate_admissible_words(int n, bool cyclic) {
  if (n < 1 || n > 30)
    throw domain_error("invalid-count: word length " + std::to_string(n) + " outside [1,30]");
  std::vector<ItineraryWord> out;
  gen_words(n, cyclic, out);
  return out;
}

std::vector<CylinderInterval> cylinder_intervals(const Params& p, int depth) {
  if (depth < 1 || depth > 40)
    throw domain_error("invalid-count: depth " + std::to_string(depth) + " outside [1,40]");
  Picture pic = picture_for(p);
  std::vector<ItineraryWord> words;
  gen_words(depth, false, words);
  std::vector<CylinderInterval> out;
  out.reserve(words.size());
  for (const ItineraryWord& w : words) {
    CylinderInterval ci = refine_canonical(pic.cp, pic.cert, w.symbols);
    if (pic.reflected) {
      double t = ci.lo;
      ci.lo = -ci.hi;
      ci.hi = -t;
    }
    out.push_back(std::move(ci));
  }
  return out;
}

CylinderInterval refine_cylinder(const Params& p, const ItineraryWord& w) {
  size_t len = w.symbols.size();
  if (len < 1 || len > 40)
    throw domain_error("invalid-count: word length " + std::to_string(len) + " outside [1,40]");
  if (!is_admissible(w.symbols, w.cyclic))
    throw domain_error("inadmissible-word: '" + w.symbols + "'");
  Picture pic = picture_for(p);
  CylinderInterval ci = refine_canonical(pic.cp, pic.cert, w.symbols);
  ci.word = w;
  if (pic.reflected) {
    double t = ci.lo;
    ci.lo = -ci.hi;
    ci.hi = -t;
  }
  return ci;
}

double point_from_itinerary(const Params& p, const ItineraryWord& w) {
  int n = static_cast<int>(w.symbols.size());
  if (n < 1 || n > 30)
    throw domain_error("invalid-count: word length " + std::to_string(n) + " outside [1,30]");
  if (!is_admissible(w.symbols, true))
    throw domain_error("inadmissible-word: '" + w.symbols + "' is not cyclically admissible");
  Picture pic = picture_for(p);
  // the shadow point of w solves the problem at the word's least period
  int n0 = n;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    bool rep = true;
    for (int i = d; i < n && rep; ++i)
      rep = w.symbols[static_cast<size_t>(i)] == w.symbols[static_cast<size_t>(i % d)];
    if (rep) {
      n0 = d;
      break;
    }
  }
  std::string base = w.symbols.substr(0, static_cast<size_t>(n0));
  // bracket inside the cylinder of base repeated: g^{n0} maps it onto the
  // one-rep-shorter cylinder, which strictly contains it
  int reps = n0 <= 15 ? 3 : 2;
  std::string block;
  for (int i = 0; i < reps; ++i) block += base;
  CylinderInterval ci = refine_canonical(pic.cp, pic.cert, block);
  const Params cp = pic.cp;
  auto g = [cp](double y) { return eval_g(cp, y); };
  auto gp = [cp](double y) { return eval_g_prime(cp, y); };
  double y = detail::polish_periodic(g, gp, n0, ci.lo, ci.hi, 1.0 + cp.a);
  return pic.reflected ? -y : y;
}

ItineraryWord code_orbit(const Params& p, double y, int n) {
  if (n < 1 || n > 30)
    throw domain_error("invalid-count: itinerary length " + std::to_string(n) +
                       " outside [1,30]");
  Picture pic = picture_for(p);
  const HorseshoeCertificate& c = pic.cert;
  double cy = pic.reflected ? -y : y;
  std::string s;
  s.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double tol = 1e-9 * (1.0 + std::fabs(cy));
    if (cy >= c.y1_minus - tol && cy <= c.y1_plus + tol) {
      s.push_back('0');
    } else if (cy >= c.y2_minus - tol && cy <= c.y2_plus + tol) {
      s.push_back('1');
    } else {
      throw escaped_set("iterate " + std::to_string(k) + " left J1 u J2 at y=" +
                        fmt(pic.reflected ? -cy : cy));
    }
    cy = eval_g(pic.cp, cy);
  }
  return {s, false};
}

std::vector<double> census_roots(const Params& p, int n) {
  if (n < 1 || n > 30)
    throw domain_error("invalid-count: period " + std::to_string(n) + " outside [1,30]");
  Picture pic = picture_for(p);
  const HorseshoeCertificate& c = pic.cert;
  const Params cp = pic.cp;
  auto g = [cp](double y) { return eval_g(cp, y); };
  auto gp = [cp](double y) { return eval_g_prime(cp, y); };
  double scale = 1.0 + cp.a;
  std::vector<double> roots;
  // n-periodic points cluster geometrically around lower-period points at
  // the local expansion rate, so the cell size must shrink with n or whole
  // clusters hide inside one cell with no net sign change
  double lam = std::max(cp.a / 4.0 - 1.0, std::fabs(1.0 - cp.a * cp.b * (1.0 - cp.b)));
  double cells_wanted = 2048.0 * n;
  if (n > 3) cells_wanted = std::max(cells_wanted, 128.0 * std::pow(lam, n - 3));
  long m = static_cast<long>(std::min(cells_wanted, 4194304.0));
  auto scan = [&](auto&& self, double lo, double hi, long cells, int depth) -> void {
    double py = lo;
    double pv = detail::power_delta(g, py, n);
    for (long i = 1; i <= cells; ++i) {
      double yq = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
      double v = detail::power_delta(g, yq, n);
      if (v == 0.0) {
        roots.push_back(yq);
      } else if (pv != 0.0 && (pv < 0.0) != (v < 0.0)) {
        try {
          roots.push_back(detail::polish_periodic(g, gp, n, py, yq, scale));
        } catch (const convergence_error&) {
          // tangency-grade bracket or a root cluster: rescan it finer
          if (depth < 3) self(self, py, yq, 64, depth + 1);
        }
      }
      py = yq;
      pv = v;
    }
  };
  scan(scan, c.y1_minus, c.y1_plus, m, 0);
  scan(scan, c.y2_minus, c.y2_plus, m, 0);
  // keep only points whose whole forward orbit stays in J1 u J2 (solutions of
  // the restricted dynamics; g^n also has fixed points wandering outside)
  auto in_j = [&c](double yq) {
    double tol = 1e-9 * (1.0 + std::fabs(yq));
    return (yq >= c.y1_minus - tol && yq <= c.y1_plus + tol) ||
           (yq >= c.y2_minus - tol && yq <= c.y2_plus + tol);
  };
  std::vector<double> kept;
  for (double r : roots) {
    double cur = r;
    bool inside = true;
    for (int k = 0; k < n && inside; ++k) {
      inside = in_j(cur);
      cur = g(cur);
    }
    if (inside) kept.push_back(r);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<double> out;
  for (double r : kept)
    if (out.empty() || r - out.back() > 1e-7 * (1.0 + std::fabs(r))) out.push_back(r);
  if (pic.reflected) {
    std::reverse(out.begin(), out.end());
    for (double& r : out) r = -r;
  }
  return out;
}

}  // namespace replimap
