#pragma once

#include <functional>
#include <string>
#include <vector>

#include "replimap/conjugacy.hpp"
#include "replimap/params.hpp"

namespace replimap {

// Finite binary word over {0,1} with the golden-mean admissibility rule:
// no "11" factor (checked around the wrap as well when cyclic).
struct ItineraryWord {
  std::string symbols;
  bool cyclic = false;
};

bool is_admissible(const std::string& symbols, bool cyclic);

// Certificate of the interval-horseshoe construction: the three inequalities
//   g_min < y_max,  g_max > y_min,  g(g_max) > y_min
// (stored as positive margins), the landmark points bounding
// J1 = [y1_minus, y1_plus] and J2 = [y2_minus, y2_plus], and the two-step
// expansion constant min(|g'(y1-)|, |g'(y1+)|) * g'(y2-).
//
// For b > 1/2 the picture is computed for the mirror parameters (a, 1-b)
// (the two maps satisfy g_{a,1-b}(y) = -g_{a,b}(-y) exactly) and `reflected`
// is set; margins and expansion are then bitwise equal for b and 1-b.
struct HorseshoeCertificate {
  explicit HorseshoeCertificate(const Params& p) : params(p) {}

  Params params;
  double y_max = 0, y_min = 0, g_min = 0, g_max = 0;
  double y1_minus = 0, y1_plus = 0, y2_minus = 0, y2_plus = 0;
  double margin1 = 0, margin2 = 0, margin3 = 0;
  double expansion = 0;
  bool valid = false;
  bool reflected = false;
  std::string first_failing;  // empty when valid
};

struct Landmarks {
  double y1_minus, y1_plus, y2_minus, y2_plus;
};

// Maximal interval of points whose first `word.size()` itinerary symbols
// match `word`; stored in the y-coordinate of the canonical picture.
struct CylinderInterval {
  ItineraryWord word;
  double lo, hi;
};

// Abstract monotone-increasing/decreasing/increasing chart map: enough
// structure to run the certification engine on conjugates other than the
// closed-form g (used by the perturbed class-M path).
struct GChart {
  std::function<double(double)> g;
  std::function<double(double)> g_prime;
  double y_max;       // left critical point (local max), < 0 canonically
  double y_min;       // right critical point (local min), > 0
  double bracket_hi;  // right end of the bracket for the y2+ solve, > y2+
};

// Never throws: failures are encoded in the certificate (valid=false with
// first_failing naming the first violated condition, e.g.
// "eq9-inequality-1-failed, margin=-0.42"). b = 1/2 always yields
// valid=false ("b-equals-one-half"), as does a <= 4 ("monotone-regime").
HorseshoeCertificate certify(const Params& p);

// Certification engine on an arbitrary chart (margins, landmarks, coverings,
// expansion); `p` only labels the certificate.
HorseshoeCertificate certify_chart(const Params& p, const GChart& chart);

// The four roots g(y1-) = y2+, g(y1+) = y_max (decreasing branch) and
// g(y2-) = y_max, g(y2+) = y_min (increasing branch past y_min).
// Throws precondition_failed when an Eq-(9) margin is not positive.
Landmarks landmark_points(const Params& p);

// Smallest a (to within tol) whose certificate is valid, by doubling then
// bisection; certifiability is checked pointwise, not proven monotone in a.
double min_certified_a(double b, double tol);  // not_found if none by a = 1e6

// All admissible words of length n in lexicographic order; Fibonacci counts
// linearly, Lucas counts cyclically. n capped at 30.
std::vector<ItineraryWord> enumerate_admissible_words(int n, bool cyclic);

// All depth-`depth` cylinders by backward root-finding along monotone
// branches; pairwise disjoint, one per admissible word. depth capped at 40.
std::vector<CylinderInterval> cylinder_intervals(const Params& p, int depth);

// Single-word refinement (the workhorse behind cylinder_intervals and
// point_from_itinerary).
CylinderInterval refine_cylinder(const Params& p, const ItineraryWord& w);

// Periodic point shadowing the infinite repetition of a cyclic word:
// g^n(y*) = y* to 1e-10 with code_orbit(y*, n) = w.
double point_from_itinerary(const Params& p, const ItineraryWord& w);

// Length-n itinerary of y: symbol k is 0/1 as g^k(y) lies in J1/J2;
// escaped_set if an iterate leaves J1 u J2.
ItineraryWord code_orbit(const Params& p, double y, int n);

// All solutions of g^n(y) = y inside J1 u J2, by dense sign scan plus
// Newton polish (supports the Lucas-count census checks).
std::vector<double> census_roots(const Params& p, int n);

}  // namespace replimap
