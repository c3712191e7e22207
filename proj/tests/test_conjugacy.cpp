#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "replimap/conjugacy.hpp"
#include "replimap/errors.hpp"
#include "replimap/map_core.hpp"

using namespace replimap;

TEST_CASE("h pins and endpoint rejection") {
  CHECK(h(0.5) == 0.0);
  CHECK(h(1.0 / 3.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(h(0.0), domain_error);
  CHECK_THROWS_AS(h(1.0), domain_error);
  // h(b) is the fixed point of g: g(h(b)) = h(b)
  for (double b : {0.1, 1.0 / 3.0, 0.49, 0.8}) {
    Params p(30.0, b);
    double y0 = h(b);
    CHECK(eval_g(p, y0) == doctest::Approx(y0).epsilon(1e-13));
  }
}

TEST_CASE("h_inv pins, positivity, and deep-tail accuracy") {
  CHECK(h_inv(0.0) == 0.5);
  CHECK(h_inv(std::log(2.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // no underflow to zero anywhere in the working range; near y = -37 the
  // complement 1 - e^y drops below half an ulp of 1, so the other branch
  // saturates at exactly 1.0 (correct rounding)
  for (double y : {40.0, 100.0, 300.0, 700.0}) {
    CHECK(h_inv(y) > 0.0);
    CHECK(h_inv(-y) <= 1.0);
    CHECK(h_inv(y) == doctest::Approx(oracle::d(oracle::h_inv(oracle::big(y)))).epsilon(1e-14));
    CHECK(std::fabs(h_inv(y) + h_inv(-y) - 1.0) <= 1e-15);
  }
  CHECK(h_inv(40.0) == doctest::Approx(4.2483542552915889773e-18).epsilon(1e-14));
}

TEST_CASE("round trips") {
  for (int i = 0; i <= 60; ++i) {
    double x = std::pow(10.0, -12.0 + 12.0 * i / 60.0) / 2.0;  // covers [5e-13, 1/2]
    CHECK(std::fabs(h_inv(h(x)) - x) <= 1e-14);
    CHECK(std::fabs(h_inv(h(1.0 - x)) - (1.0 - x)) <= 1e-14);
  }
  // y-roundtrip: exact down to denormal x on the positive side. On the
  // negative side representable x near 1 are spaced ulp/(1-x) apart in y,
  // which crosses 1e-10 relative near y = -16 and reaches O(1) by y = -36.
  for (int i = -16; i <= 700; i += 4) {
    double y = static_cast<double>(i);
    if (y == 0.0) continue;
    CHECK(std::fabs(h(h_inv(y)) - y) <= 1e-10 * std::fabs(y));
  }
}

TEST_CASE("commuting diagram h o f = g o h") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ua(0.5, 200.0), ub(0.05, 0.95);
  long kept = 0, total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Params p(ua(rng), ub(rng));
    for (int i = 0; i < 10000; ++i) {
      double x = 1e-8 + (1.0 - 2e-8) * (i + 0.5) / 10000.0;
      ++total;
      double fx = eval_f(p, x);
      // where f saturates toward 1 the output x-representation cannot hold
      // the conjugated y at all (ulp resolution eps/(1-f) > 1e-10)
      if (1.0 - fx < 1e-5) continue;
      ++kept;
      CHECK(std::fabs(h(fx) - eval_g(p, h(x))) <= 1e-10);
    }
  }
  CHECK(kept * 2 > total);
}

TEST_CASE("eval_g fixed point and oracle values") {
  Params p(30.0, 1.0 / 3.0);
  double y0 = std::log(2.0);
  CHECK(eval_g(p, y0) == doctest::Approx(y0).epsilon(1e-14));
  // g agrees with the conjugated composition wherever y survives the trip
  // through x-space: below y = -14 the x-representation of h_inv(y) (near 1)
  // quantizes y itself, so that band is checked through the mirror instead
  Params pm(30.0, 1.0 - 1.0 / 3.0);
  for (int i = -300; i <= 300; ++i) {
    double y = i / 10.0;
    if (y >= -13.0) {
      CHECK(std::fabs(eval_g(p, y) - h(eval_f(p, h_inv(y)))) <= 1e-10);
    } else {
      CHECK(std::fabs(eval_g(pm, -y) - h(eval_f(pm, h_inv(-y)))) <= 1e-10);
      CHECK(std::fabs(eval_g(p, y) + eval_g(pm, -y)) <= 1e-12);
    }
  }
  // value at the critical point, against the big-float oracle
  GCriticalData d = g_critical_data(p);
  oracle::big a(30), b(1), y(d.y_min);
  b /= 3;
  CHECK(d.g_min == doctest::Approx(oracle::d(oracle::g(a, b, y))).epsilon(1e-13));
  CHECK(d.g_min == doctest::Approx(-5.633).epsilon(1e-3));
}

TEST_CASE("eval_g_prime zeros and finite differences") {
  CHECK(eval_g_prime(Params(4.0, 0.5), 0.0) == 0.0);
  Params p(30.0, 1.0 / 3.0);
  GCriticalData d = g_critical_data(p);
  CHECK(std::fabs(eval_g_prime(p, d.y_max)) <= 1e-12);
  CHECK(std::fabs(eval_g_prime(p, d.y_min)) <= 1e-12);
  double e = 1e-6;
  double fd = (eval_g(p, 1.0 + e) - eval_g(p, 1.0 - e)) / (2.0 * e);
  CHECK(eval_g_prime(p, 1.0) == doctest::Approx(fd).epsilon(1e-7));
  // monotone pattern: negative strictly inside (y_max, y_min), positive outside
  for (int i = 1; i < 40; ++i) {
    double y = d.y_max + (d.y_min - d.y_max) * i / 40.0;
    CHECK(eval_g_prime(p, y) < 0.0);
  }
  for (double y : {d.y_max - 0.5, d.y_max - 3.0, d.y_min + 0.5, d.y_min + 3.0})
    CHECK(eval_g_prime(p, y) > 0.0);
}

TEST_CASE("eval_g_second sign structure and finite differences") {
  Params p(30.0, 1.0 / 3.0);
  CHECK(eval_g_second(p, 0.0) == 0.0);
  CHECK(eval_g_second(p, 2.0) > 0.0);
  CHECK(eval_g_second(p, -2.0) < 0.0);
  for (int i = -50; i <= 50; ++i) {
    double y = i / 5.0;
    double s = eval_g_second(p, y);
    if (y > 0.0) CHECK(s > 0.0);
    if (y < 0.0) CHECK(s < 0.0);
  }
  double e = 1e-5;
  for (double y : {-2.0, -0.3, 0.7, 2.5}) {
    double fd = (eval_g_prime(p, y + e) - eval_g_prime(p, y - e)) / (2.0 * e);
    CHECK(eval_g_second(p, y) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("g_critical_data closed forms") {
  Params p(30.0, 1.0 / 3.0);
  GCriticalData d = g_critical_data(p);
  CHECK(d.y_min == doctest::Approx(std::log(14.0 + std::sqrt(195.0))).epsilon(1e-15));
  CHECK(d.y_min == doctest::Approx(3.33089).epsilon(1e-5));
  CHECK(d.y_max == -d.y_min);
  CHECK(d.y0 == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(d.g_max == doctest::Approx(eval_g(p, d.y_max)).epsilon(1e-15));
  CHECK_THROWS_AS(g_critical_data(Params(4.0, 0.5)), monotone_regime_error);
  CHECK_THROWS_AS(g_critical_data(Params(3.0, 0.5)), monotone_regime_error);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ua(4.001, 300.0), ub(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    Params q(ua(rng), ub(rng));
    GCriticalData e = g_critical_data(q);
    CHECK(std::fabs(e.y_max + e.y_min) <= 1e-13);
    oracle::big yc = oracle::y_crit(oracle::big(q.a));
    CHECK(e.y_min == doctest::Approx(oracle::d(yc)).epsilon(1e-13));
    // h carries f's critical points onto g's, with order reversed
    CriticalPoints c = critical_points(q);
    CHECK(std::fabs(h(c.x_max) - e.y_min) <= 1e-10 * (1.0 + e.y_min));
    CHECK(std::fabs(h(c.x_min) - e.y_max) <= 1e-10 * (1.0 + e.y_min));
  }
}

TEST_CASE("mirror identity in both coordinates") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> ua(0.5, 60.0), ub(0.05, 0.95), uy(-20.0, 20.0);
  for (int trial = 0; trial < 30; ++trial) {
    double a = ua(rng), b = ub(rng);
    Params p(a, b), q(a, 1.0 - b);
    for (int i = 0; i < 200; ++i) {
      double x = (i + 0.5) / 200.0;
      // f_{a,1-b}(x) = 1 - f_{a,b}(1-x)
      CHECK(std::fabs(eval_f(q, x) - (1.0 - eval_f(p, 1.0 - x))) <= 1e-14);
      double y = uy(rng);
      // g_{a,1-b}(y) = -g_{a,b}(-y)
      CHECK(std::fabs(eval_g(q, y) + eval_g(p, -y)) <= 1e-13 * (1.0 + std::fabs(y) + a));
    }
  }
}
