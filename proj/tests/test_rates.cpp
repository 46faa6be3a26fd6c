#include <cmath>
#include <random>

#include "doctest.h"
#include "ness/error.hpp"
#include "ness/rates.hpp"
#include "test_support.hpp"

using namespace ness;

namespace {

// Geometric series sum_{k>=1} e^{-k w/T}.
double occupation_series(double w, double t) {
  double sum = 0.0;
  for (int k = 1; k < 2000; ++k) sum += std::exp(-k * w / t);
  return sum;
}

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("bose occupation values") {
  CHECK(bose_occupation(1.0, 0.0) == 0.0);
  CHECK(bose_occupation(1.0, 1.0) == doctest::Approx(occupation_series(1.0, 1.0)).epsilon(1e-13));
  CHECK(bose_occupation(1.0, 1.0) == doctest::Approx(0.5819767068693265).epsilon(1e-14));
  CHECK(bose_occupation(2.0, 0.5) == doctest::Approx(occupation_series(2.0, 0.5)).epsilon(1e-13));
  CHECK(bose_occupation(2.0, 0.5) == doctest::Approx(0.01865736036377405).epsilon(1e-13));
}

TEST_CASE("bose occupation rejects non-positive frequency") {
  for (double w : {0.0, -1.0}) {
    try {
      bose_occupation(w, 1.0);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonPositiveFrequency);
    }
  }
}

TEST_CASE("bose occupation increases with temperature") {
  double previous = 0.0;
  for (double t = 0.05; t < 10.0; t *= 1.3) {
    const double n = bose_occupation(1.7, t);
    CHECK(n > previous);
    previous = n;
  }
}

TEST_CASE("spectral weight values and KMS extension") {
  CHECK(spectral_weight(0.02, 2.0, 0.0) == 0.0);
  CHECK(spectral_weight(0.02, -2.0, 0.0) == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(spectral_weight(0.02, -1.0, 1.0) == doctest::Approx(0.03163953413738653).epsilon(1e-13));
  try {
    spectral_weight(0.02, 0.0, 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroFrequency);
  }

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(0.01, 8.0), t(0.05, 5.0), g(0.001, 1.0);
  for (int n = 0; n < 1000; ++n) {
    const double om = w(rng), tt = t(rng), gg = g(rng);
    const double up = spectral_weight(gg, om, tt);
    const double down = spectral_weight(gg, -om, tt);
    CHECK(up >= 0.0);
    CHECK(down == doctest::Approx(std::exp(om / tt) * up).epsilon(1e-12));
  }
}

TEST_CASE("rate set totals and positivity") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 500; ++n) {
    const SystemParams sys = test::random_system(rng);
    if (std::abs(eigenstructure(sys).omega1) < 1e-3) continue;
    const RateSet r = rate_set(sys, test::random_baths(rng));
    for (double v : {r.x1_plus, r.x1_minus, r.y2_plus, r.y2_minus, r.x2_plus, r.x2_minus, r.y1_plus, r.y1_minus})
      CHECK(v >= 0.0);
    CHECK(r.x1 == r.x1_plus + r.x1_minus);
    CHECK(r.y2 == r.y2_plus + r.y2_minus);
    CHECK(r.x1 > 0.0);
    CHECK(r.y2 > 0.0);
  }
}

TEST_CASE("symmetric chain collapses the bath weights") {
  for (double t : {0.3, 1.0, 2.5}) {
    const RateSet r = rate_set({3.0, 3.0, 1.0}, {t, t, 0.02, 0.02});
    CHECK(r.x1_plus == doctest::Approx(r.y1_plus).epsilon(1e-14));
    CHECK(r.x1_minus == doctest::Approx(r.y1_minus).epsilon(1e-14));
    CHECK(r.x2_plus == doctest::Approx(r.y2_plus).epsilon(1e-14));
    CHECK(r.x1_plus / r.x1_minus == doctest::Approx(std::exp(2.0 / t)).epsilon(1e-12));
    CHECK(r.x1_minus == doctest::Approx(2.0 * 0.02 * bose_occupation(2.0, t)).epsilon(1e-13));
  }
}

TEST_CASE("detailed balance with unequal weights at equal temperature") {
  // eps1=2, eps2=1: weights differ, ratios are still e^{omega/T}.
  const EigenStructure e = eigenstructure({2.0, 1.0, 1.0});
  const RateSet r = rate_set({2.0, 1.0, 1.0}, {0.7, 0.7, 0.02, 0.02});
  CHECK(r.x1_plus / r.x1_minus == doctest::Approx(std::exp(e.omega1 / 0.7)).epsilon(1e-12));
  CHECK(r.y2_plus / r.y2_minus == doctest::Approx(std::exp(e.omega2 / 0.7)).epsilon(1e-12));
}

TEST_CASE("fig 1 rate set by direct evaluation") {
  const SystemParams sys{2.0, 1.0, 1.0};
  const BathParams baths{1.0, 0.5, 0.02, 0.02};
  const EigenStructure e = eigenstructure(sys);
  const double c2 = 1.0 + std::cos(e.theta), s2 = 1.0 - std::cos(e.theta);
  const auto n = [](double w, double t) { return 1.0 / (std::exp(w / t) - 1.0); };
  const RateSet r = rate_set(sys, baths);
  CHECK(r.x1_minus == doctest::Approx(0.02 * (c2 * n(e.omega1, 1.0) + s2 * n(e.omega1, 0.5))).epsilon(1e-12));
  CHECK(r.x1_plus == doctest::Approx(0.02 * (c2 * (1 + n(e.omega1, 1.0)) + s2 * (1 + n(e.omega1, 0.5)))).epsilon(1e-12));
  CHECK(r.y2_minus == doctest::Approx(0.02 * (s2 * n(e.omega2, 1.0) + c2 * n(e.omega2, 0.5))).epsilon(1e-12));
  CHECK(r.y2_plus == doctest::Approx(0.02 * (s2 * (1 + n(e.omega2, 1.0)) + c2 * (1 + n(e.omega2, 0.5)))).epsilon(1e-12));
  CHECK(r.x2_minus == doctest::Approx(0.02 * (c2 * n(e.omega2, 1.0) + s2 * n(e.omega2, 0.5))).epsilon(1e-12));
  CHECK(r.y1_plus == doctest::Approx(0.02 * (s2 * (1 + n(e.omega1, 1.0)) + c2 * (1 + n(e.omega1, 0.5)))).epsilon(1e-12));
}

TEST_CASE("strong coupling keeps rates well defined") {
  // eps1=eps2=0.5, K=1: omega1 = -0.5
  const SystemParams sys{0.5, 0.5, 1.0};
  CHECK(eigenstructure(sys).omega1 == doctest::Approx(-0.5));
  for (double t : {0.0, 0.4, 2.0}) {
    const RateSet r = rate_set(sys, {t, t, 0.02, 0.02});
    CHECK(r.x1_plus == doctest::Approx(2 * 0.02 * bose_occupation(0.5, t)).epsilon(1e-13));
    CHECK(r.x1_minus == doctest::Approx(2 * 0.02 * (1 + bose_occupation(0.5, t))).epsilon(1e-13));
    CHECK(r.x1 > 0.0);
  }
}

TEST_CASE("zero Bohr frequency is a degenerate transition") {
  // eps1 * eps2 = K^2 puts omega1 at zero.
  try {
    rate_set({2.0, 0.5, 1.0}, {1.0, 1.0, 0.02, 0.02});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTransition);
    CHECK(e.is_degenerate_physics());
  }
}

}  // TEST_SUITE
