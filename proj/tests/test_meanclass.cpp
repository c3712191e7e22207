#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "replimap/conjugacy.hpp"
#include "replimap/errors.hpp"
#include "replimap/horseshoe.hpp"
#include "replimap/map_core.hpp"
#include "replimap/meanclass.hpp"
#include "replimap/orbits.hpp"

using namespace replimap;

namespace {

const double kPi = std::acos(-1.0);

MeanMapSpec doubling_spec(bool with_inverse) {
  // H = id on (0,1): the induced map is x -> 2x - b, escaping past x = (1+b)/2
  MeanMapSpec s;
  s.name = "doubling";
  s.H = [](double x) { return x; };
  if (with_inverse) s.H_inv = [](double u) { return u; };
  s.H_prime = [](double) { return 1.0; };
  s.b = 0.0;
  s.lo = 0.0;
  s.hi = 1.0;
  s.grid_lo = 0.001;
  s.grid_hi = 0.999;
  s.increasing = true;
  return s;
}

std::function<double(double)> perturbed_H(double amp) {
  return [amp](double x) { return h(x) / 30.0 + amp * std::sin(kPi * x); };
}

std::function<double(double)> perturbed_H_prime(double amp) {
  return [amp](double x) {
    return -1.0 / (30.0 * x * (1.0 - x)) + amp * kPi * std::cos(kPi * x);
  };
}

}  // namespace

TEST_CASE("built-in families satisfy the cohomological identity") {
  CHECK(verify_cohomology(replicator_family(30.0, 1.0 / 3.0), 10000) <= 1e-13);
  CHECK(verify_cohomology(ricker_family(0.8), 10000) <= 1e-13);
  CHECK(verify_cohomology(ricker_family(2.5), 10000) <= 1e-13);
  CHECK(verify_cohomology(arctan_family(2.0, 0.1), 10000) <= 1e-12);
  CHECK(verify_cohomology(probit_family(0.3), 10000) <= 1e-10);
  CHECK_THROWS_AS(verify_cohomology(ricker_family(0.8), 1), domain_error);
}

TEST_CASE("induced maps match their closed forms") {
  {
    // H = h/a reproduces the replicator map itself
    Params p(30.0, 1.0 / 3.0);
    Map1D m = make_map_from_H(replicator_family(p.a, p.b));
    CHECK(m.warning.empty());
    for (int i = 1; i <= 19; ++i) {
      double x = 0.05 * i;
      CHECK(m.f(x) == doctest::Approx(eval_f(p, x)).epsilon(1e-12));
      CHECK(m.fprime(x) == doctest::Approx(eval_f_prime(p, x)).epsilon(1e-10));
    }
  }
  {
    // H = -ln x gives x e^{b-x}
    Map1D m = make_map_from_H(ricker_family(0.8));
    for (double x : {0.3, 1.0, 1.7})
      CHECK(m.f(x) == doctest::Approx(x * std::exp(0.8 - x)).epsilon(1e-13));
  }
  {
    // H = -tan(x)/a gives atan(tan(x) - a(x-b))
    Map1D m = make_map_from_H(arctan_family(2.0, 0.1));
    for (double x : {-1.2, -0.4, 0.3, 1.3})
      CHECK(m.f(x) == doctest::Approx(std::atan(std::tan(x) - 2.0 * (x - 0.1))).epsilon(1e-12));
  }
  {
    // H = standard normal quantile
    Map1D m = make_map_from_H(probit_family(0.3));
    const double r2 = std::sqrt(2.0);
    for (double x : {0.2, 0.5, 0.7}) {
      double z = -r2 * boost::math::erfc_inv(2.0 * x);
      CHECK(m.f(x) == doctest::Approx(0.5 * std::erfc(-(z + x - 0.3) / r2)).epsilon(1e-12));
    }
  }
  {
    MeanMapSpec s = ricker_family(2.5);
    CHECK(s.grid_hi == doctest::Approx(std::exp(1.5) + 1.0).epsilon(1e-15));
    CHECK(!s.increasing);
    CHECK(probit_family(0.3).increasing);
    CHECK(make_builtin("arctan", 2.0, 0.1).name == "arctan");
    CHECK(make_builtin("probit", 0.0, 0.3).H(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(make_builtin("logistic", 4.0, 0.5),
                         doctest::Contains("invalid-family"), domain_error);
    CHECK_THROWS_AS(ricker_family(std::nan("")), domain_error);
    CHECK_THROWS_AS(arctan_family(-1.0, 0.1), domain_error);
  }
}

TEST_CASE("spec validation") {
  MeanMapSpec s = doubling_spec(true);
  {
    MeanMapSpec bad = s;
    bad.H = nullptr;
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("potential H is required"),
                         domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.lo = 1.0;
    bad.hi = 0.0;
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("need lo < hi"), domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.grid_hi = 2.0;
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("sampling window"),
                         domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.b = std::nan("");
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("b must be finite"),
                         domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.lo = -1.0;
    bad.grid_lo = -0.5;
    bad.H = [](double x) { return std::sqrt(x); };
    bad.H_inv = nullptr;
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("not finite"), domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.hi = 3.2;
    bad.grid_lo = 0.1;
    bad.grid_hi = 3.0;
    bad.H = [](double x) { return std::sin(x); };
    bad.H_inv = nullptr;
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("not strictly increasing"),
                         domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.increasing = false;
    bad.H_inv = nullptr;
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("not strictly decreasing"),
                         domain_error);
  }
  {
    MeanMapSpec bad = s;
    bad.H_inv = [](double u) { return u + 1e-3; };
    CHECK_THROWS_WITH_AS(make_map_from_H(bad), doctest::Contains("H_inv(H(x)) is off by"),
                         domain_error);
  }
}

TEST_CASE("domain escape on the doubling potential") {
  Map1D m = make_map_from_H(doubling_spec(true));
  CHECK(m.lo == 0.001);
  CHECK(m.hi == 0.999);
  CHECK(m.f(0.3) == 0.6);
  CHECK(m.fprime(0.3) == 2.0);
  CHECK_THROWS_WITH_AS(m.f(0.6), doctest::Contains("leaves the range"), domain_escape);
  CHECK_THROWS_WITH_AS(m.f(-0.2), doctest::Contains("invalid-x"), domain_error);
  CHECK_THROWS_AS(m.f(1.5), domain_error);
  // the validation grid crosses the escape point and leaves a warning behind
  CHECK(!m.warning.empty());
  CHECK(m.warning.find("leaves the range") != std::string::npos);

  // same spec through monotone inversion instead of the closed-form inverse
  Map1D m2 = make_map_from_H(doubling_spec(false));
  CHECK(m2.f(0.3) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK_THROWS_AS(m2.f(0.6), domain_escape);
  CHECK(!m2.warning.empty());
}

TEST_CASE("orbit means under the induced map") {
  {
    MeanMapSpec s = replicator_family(16.0, 0.5);
    PeriodicOrbit o = period2_orbit(Params(16.0, 0.5));
    CHECK(orbit_mean_check(s, o) <= 1e-12);
    PeriodicOrbit tampered = o;
    tampered.points[0] += 1e-6;
    CHECK_THROWS_AS(orbit_mean_check(s, tampered), not_periodic);
    PeriodicOrbit shape;
    shape.period = 2;
    shape.points = {0.3};
    CHECK_THROWS_WITH_AS(orbit_mean_check(s, shape), doctest::Contains("invalid-orbit"),
                         domain_error);
  }
  {
    MeanMapSpec s = replicator_family(19.06, 0.3961);
    for (const PeriodicOrbit& o : attractors_from_critical_orbits(Params(19.06, 0.3961),
                                                                  100000, 64)) {
      REQUIRE(o.period == 4);
      CHECK(orbit_mean_check(s, o) <= 1e-9);
    }
  }
  {
    // flip orbit of the Ricker member, found by the generic engine
    MeanMapSpec s = ricker_family(2.5);
    auto v = find_periodic_orbits_map(make_map_from_H(s), 2);
    REQUIRE(v.size() == 1);
    CHECK(v[0].points[0] < 2.5);
    CHECK(v[0].points[1] > 2.5);
    CHECK(std::fabs(v[0].mean - 2.5) <= 1e-12);
    CHECK(std::fabs(v[0].multiplier) < 1.0);
    CHECK(orbit_mean_check(s, v[0]) <= 1e-12);
  }
  {
    // x = b is a fixed point for every member
    for (MeanMapSpec s : {ricker_family(0.8), arctan_family(2.0, 0.1), probit_family(0.3)}) {
      PeriodicOrbit fix;
      fix.period = 1;
      fix.points = {s.b};
      CHECK(orbit_mean_check(s, fix) <= 1e-13);
    }
  }
}

TEST_CASE("birkhoff averages obey the telescoped identity") {
  {
    // chaotic member: the time average still lands on b
    MeanMapSpec s = replicator_family(15.66, 1.0 / 3.0);
    BirkhoffReport r = birkhoff_average(s, 0.41, 200000);
    CHECK(std::fabs(r.average - s.b - r.correction) <= 1e-12);
    CHECK(std::fabs(r.correction) <= 1e-4);
    CHECK(std::fabs(r.average - s.b) <= 1e-4);
  }
  {
    // starting at the fixed point: zero correction, average exactly b
    BirkhoffReport r = birkhoff_average(replicator_family(8.0, 0.5), 0.5, 1000);
    CHECK(r.average == 0.5);
    CHECK(r.correction == 0.0);
  }
  {
    // on a periodic orbit with n = period the correction collapses
    MeanMapSpec s = replicator_family(16.0, 0.5);
    PeriodicOrbit o = period2_orbit(Params(16.0, 0.5));
    BirkhoffReport r = birkhoff_average(s, o.points[0], 2);
    CHECK(std::fabs(r.average - 0.5) <= 1e-12);
    CHECK(std::fabs(r.correction) <= 1e-12);
  }
  {
    MeanMapSpec s = ricker_family(2.5);
    BirkhoffReport r = birkhoff_average(s, 1.7, 100000);
    CHECK(std::fabs(r.average - s.b - r.correction) <= 1e-12);
    CHECK(std::fabs(r.average - 2.5) <= 1e-4);
    BirkhoffReport one = birkhoff_average(s, 1.7, 1);
    CHECK(one.average == 1.7);
  }
  CHECK_THROWS_AS(birkhoff_average(ricker_family(0.8), 0.5, 0), domain_error);
}

TEST_CASE("perturbed member of the chaotic class") {
  Params base(30.0, 1.0 / 3.0);
  MeanMapSpec s = perturbed_chaotic_member(base, perturbed_H(1e-4), perturbed_H_prime(1e-4),
                                           1e-3);
  CHECK(s.name == "perturbed");
  CHECK(s.b == base.b);
  CHECK(!s.increasing);
  CHECK(s.grid_lo == 1e-6);
  CHECK(s.grid_hi == 1.0 - 1e-6);
  CHECK(verify_cohomology(s, 2000) <= 1e-12);

  // rejections
  CHECK_THROWS_WITH_AS(
      perturbed_chaotic_member(base, perturbed_H(1e-4), perturbed_H_prime(1e-4), 1e-4),
      doctest::Contains("exceeds delta"), not_close);
  CHECK_THROWS_WITH_AS(
      perturbed_chaotic_member(base, perturbed_H(0.2), perturbed_H_prime(0.2), 10.0),
      doctest::Contains("not strictly decreasing"), not_close);
  CHECK_THROWS_WITH_AS(
      perturbed_chaotic_member(Params(8.0, 1.0 / 3.0), perturbed_H(1e-4),
                               perturbed_H_prime(1e-4), 1e-3),
      doctest::Contains("not certified"), certificate_required);
  CHECK_THROWS_AS(perturbed_chaotic_member(Params(30.0, 0.5), perturbed_H(1e-4),
                                           perturbed_H_prime(1e-4), 1e-3),
                  certificate_required);
  CHECK_THROWS_WITH_AS(perturbed_chaotic_member(base, nullptr, perturbed_H_prime(1e-4), 1e-3),
                       doctest::Contains("both required"), domain_error);
  CHECK_THROWS_WITH_AS(
      perturbed_chaotic_member(base, perturbed_H(1e-4), perturbed_H_prime(1e-4), 0.0),
      doctest::Contains("delta must be positive"), domain_error);
}

TEST_CASE("chart certification") {
  Params base(30.0, 1.0 / 3.0);
  HorseshoeCertificate direct = certify(base);
  {
    // the replicator chart reduces to the direct certificate
    HorseshoeCertificate c = certify_spec(base, replicator_family(30.0, 1.0 / 3.0));
    REQUIRE(c.valid);
    CHECK(c.y_min == doctest::Approx(direct.y_min).epsilon(1e-9));
    CHECK(c.y_max == doctest::Approx(direct.y_max).epsilon(1e-9));
    CHECK(c.g_min == doctest::Approx(direct.g_min).epsilon(1e-9));
    CHECK(c.g_max == doctest::Approx(direct.g_max).epsilon(1e-9));
    CHECK(c.margin1 == doctest::Approx(direct.margin1).epsilon(1e-9));
    CHECK(c.margin2 == doctest::Approx(direct.margin2).epsilon(1e-9));
    CHECK(c.margin3 == doctest::Approx(direct.margin3).epsilon(1e-9));
    CHECK(c.y1_minus == doctest::Approx(direct.y1_minus).epsilon(1e-9));
    CHECK(c.y1_plus == doctest::Approx(direct.y1_plus).epsilon(1e-9));
    CHECK(c.y2_minus == doctest::Approx(direct.y2_minus).epsilon(1e-9));
    CHECK(c.y2_plus == doctest::Approx(direct.y2_plus).epsilon(1e-9));
    CHECK(c.expansion == doctest::Approx(direct.expansion).epsilon(1e-9));
  }
  {
    // the certificate follows the perturbed potential, not the base map
    MeanMapSpec s = perturbed_chaotic_member(base, perturbed_H(1e-4), perturbed_H_prime(1e-4),
                                             1e-3);
    HorseshoeCertificate c = certify_spec(base, s);
    REQUIRE(c.valid);
    CHECK(!c.reflected);
    CHECK(c.margin1 == doctest::Approx(2.302722629).epsilon(1e-6));
    CHECK(c.margin2 == doctest::Approx(12.302051673).epsilon(1e-6));
    CHECK(c.margin3 == doctest::Approx(2.302056543).epsilon(1e-6));
    CHECK(c.expansion == doctest::Approx(3.087686448).epsilon(1e-6));
    CHECK(c.expansion > 1.0);
    // close to, but measurably different from, the unperturbed certificate
    CHECK(std::fabs(c.margin1 - direct.margin1) <= 2e-3);
    CHECK(std::fabs(c.margin1 - direct.margin1) >= 1e-5);
    CHECK(std::fabs(c.expansion - direct.expansion) >= 1e-5);
  }
  {
    // bounded inverse: the third covering inequality cannot hold
    HorseshoeCertificate c = certify_spec(base, arctan_family(30.0, 1.0 / 3.0));
    CHECK(!c.valid);
    CHECK(c.first_failing.find("eq9-inequality-3") != std::string::npos);
    CHECK(c.margin1 > 0.0);
    CHECK(c.margin2 > 0.0);
    CHECK(c.margin3 < 0.0);
  }
  {
    // H' = -1 is tangent for the Ricker potential: no second critical point
    HorseshoeCertificate c = certify_spec(base, ricker_family(0.4));
    CHECK(!c.valid);
    CHECK(c.first_failing.find("chart-critical-points-not-found") != std::string::npos);
  }
  {
    HorseshoeCertificate c = certify_spec(base, probit_family(0.3));
    CHECK(!c.valid);
    CHECK(c.first_failing == "chart-requires-decreasing-potential");
  }
  {
    HorseshoeCertificate c = certify_spec(base, arctan_family(30.0, 1.5));
    CHECK(!c.valid);
    CHECK(c.first_failing.find("chart shift") != std::string::npos);
  }
  {
    HorseshoeCertificate c = certify_spec(Params(4.0, 1.0 / 3.0),
                                          replicator_family(4.0, 1.0 / 3.0));
    CHECK(!c.valid);
    CHECK(c.first_failing.find("monotone-regime") != std::string::npos);
  }
}
