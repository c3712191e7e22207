#pragma once

#include <functional>
#include <string>
#include <vector>

#include "replimap/horseshoe.hpp"
#include "replimap/orbits.hpp"
#include "replimap/params.hpp"

namespace replimap {

// A class-M map specified by a strictly monotone potential H on an interval:
// f(x) = H^{-1}(H(x) + x - b), which satisfies H(f(x)) - H(x) = x - b, so
// every invariant measure (in particular every periodic orbit) has mean b.
struct MeanMapSpec {
  std::string name;
  std::function<double(double)> H;
  std::function<double(double)> H_inv;    // empty -> monotone root-finding on H
  std::function<double(double)> H_prime;  // empty -> centered finite differences
  double b = 0.0;
  double lo = 0.0, hi = 1.0;            // mathematical domain I (open)
  double grid_lo = 0.0, grid_hi = 1.0;  // finite sampling window for grids/searches
  bool increasing = false;              // direction of H
};

// Evaluable induced map; validates the spec (monotone H by sampling,
// H_inv o H = id to 1e-9 relative). Maps-into-I failures on a test grid are
// reported through Map1D::warning, not as errors. Evaluation throws
// domain_escape when H(x) + x - b leaves the range of H over I.
Map1D make_map_from_H(const MeanMapSpec& s);

// max over a grid-point mesh of |H(f(x)) - H(x) - (x - b)|.
double verify_cohomology(const MeanMapSpec& s, long grid);

// |mean(orbit) - b| after re-verifying periodicity under the induced map
// (not_periodic when |f^period(x) - x| > 1e-10 scale at some point).
double orbit_mean_check(const MeanMapSpec& s, const PeriodicOrbit& orbit);

// average = (1/n) Sum_{j<n} f^j(x0); the telescoped identity makes
// average = b + correction with correction = (H(f^n(x0)) - H(x0)) / n.
struct BirkhoffReport {
  double average;
  double correction;
};

BirkhoffReport birkhoff_average(const MeanMapSpec& s, double x0, long n);

// C1-small perturbation of the replicator potential h/a at certified base
// parameters; not_close if max(|H~ - h/a|, |H~' - (h/a)'|) on the absorbing
// interval exceeds delta, or H~ is not strictly monotone there.
MeanMapSpec perturbed_chaotic_member(const Params& base, std::function<double(double)> H_tilde,
                                     std::function<double(double)> H_tilde_prime, double delta);

// Generalized certification with y = a H(x) as the conjugating chart:
// G(y) = y + a H^{-1}(y/a) - a b. Reduces to certify(p) when H = h/a.
HorseshoeCertificate certify_spec(const Params& base, const MeanMapSpec& s);

// Built-in families.
MeanMapSpec replicator_family(double a, double b);  // H = h/a on (0,1)
MeanMapSpec ricker_family(double b);                // H = -ln x: f = e^b x e^{-x}
MeanMapSpec arctan_family(double a, double b);      // H = -tan(x)/a on (-pi/2, pi/2)
MeanMapSpec probit_family(double b = 0.0);          // H = Phi^{-1} on (0,1)

// Lookup by name ("replicator", "ricker", "arctan", "probit"); a/b routed to
// whichever parameters the family takes.
MeanMapSpec make_builtin(const std::string& name, double a, double b);

}  // namespace replimap
