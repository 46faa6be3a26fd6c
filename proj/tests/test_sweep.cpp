#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "ness/analytic.hpp"
#include "ness/error.hpp"
#include "ness/output.hpp"
#include "ness/sweep.hpp"
#include "test_support.hpp"

using namespace ness;

namespace {

ExperimentConfig dynamics_config(double t1, double t2, InitialKind initial) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Dynamics;
  cfg.sys = {2.0, 1.0, 1.0};
  cfg.baths = {t1, t2, 0.02, 0.02};
  cfg.initial.kind = initial;
  cfg.t_end = 250.0;
  cfg.samples = 251;
  return cfg;
}

ExperimentConfig surface_config(double eps1, double eps2) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SteadySurface;
  cfg.sys = {eps1, eps2, 1.0};
  cfg.t_mean = GridSpec{0.05, 2.5, 21};
  cfg.delta_t = GridSpec{-2.0, 2.0, 21};
  return cfg;
}

ExperimentConfig max_config(GridSpec e1, GridSpec e2) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::MaxSurface;
  cfg.eps1 = e1;
  cfg.eps2 = e2;
  return cfg;
}

std::string csv(const SweepResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("grid specs parse and expand inclusively") {
  const GridSpec g = parse_grid("0.5:2.5:5");
  CHECK(g.min == 0.5);
  CHECK(g.max == 2.5);
  CHECK(g.count == 5);
  const auto v = g.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.5);
  CHECK(v.back() == 2.5);
  CHECK(v[2] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(parse_grid("-2:2:21").values()[10] == doctest::Approx(0.0));

  for (const char* bad : {"", "1:2", "1:2:3:4", "a:2:3", "1:2:1", "2:1:5", "1:2:x", "1:2:3.5"}) {
    CHECK_THROWS_AS(parse_grid(bad), Error);
  }
}

TEST_CASE("config validation") {
  auto cfg = dynamics_config(1.0, 0.5, InitialKind::UpDown);
  CHECK_NOTHROW(cfg.validate());
  cfg.t_end = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = dynamics_config(-1.0, 0.5, InitialKind::UpDown);
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = dynamics_config(1.0, 0.5, InitialKind::Custom);
  cfg.initial.p0 = 0.7;
  cfg.initial.p1 = 0.7;
  CHECK_THROWS_AS(cfg.validate(), Error);

  auto s = surface_config(3.0, 3.0);
  s.delta_t.reset();
  CHECK_THROWS_AS(s.validate(), Error);
  s = surface_config(3.0, 3.0);
  s.spot_check_fraction = 1.5;
  CHECK_THROWS_AS(s.validate(), Error);

  auto m = max_config({1.0, 2.0, 3}, {1.0, 2.0, 3});
  m.t_box_min = 0.0;
  CHECK_THROWS_AS(m.validate(), Error);
  m = max_config({1.0, 2.0, 3}, {1.0, 2.0, 3});
  m.inner_grid = 1;
  CHECK_THROWS_AS(m.validate(), Error);
}

TEST_CASE("singlet at t = 0 has unit concurrence") {
  auto cfg = dynamics_config(1.0, 0.5, InitialKind::Singlet);
  cfg.samples = 1;
  const auto r = run_dynamics(cfg);
  REQUIRE(r.records.size() == 1);
  CHECK(*r.records[0].t == 0.0);
  CHECK(*r.records[0].c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("higher temperatures give lower late-time concurrence") {
  std::vector<double> late;
  for (const auto& [t1, t2] : {std::pair{0.5, 0.2}, {1.0, 0.5}, {1.5, 1.0}}) {
    const auto r = run_dynamics(dynamics_config(t1, t2, InitialKind::UpDown));
    late.push_back(*r.records.back().c);
  }
  CHECK(late[0] > late[1]);
  CHECK(late[1] > late[2]);
}

TEST_CASE("traces from different initial states converge") {
  std::vector<double> at_end;
  for (auto initial : {InitialKind::Excited, InitialKind::UpDown, InitialKind::Singlet}) {
    const auto r = run_dynamics(dynamics_config(1.0, 0.5, initial));
    CHECK(*r.records.back().t == 250.0);
    at_end.push_back(*r.records.back().c);
  }
  const double c_inf = steady_concurrence({2.0, 1.0, 1.0}, {1.0, 0.5, 0.02, 0.02});
  for (double a : at_end) {
    CHECK(std::abs(a - c_inf) < 1e-3);
    for (double b : at_end) CHECK(std::abs(a - b) < 1e-3);
  }
}

TEST_CASE("both engines emit agreeing columns") {
  auto cfg = dynamics_config(1.0, 0.5, InitialKind::Singlet);
  cfg.engine = Engine::Both;
  cfg.samples = 51;
  const auto r = run_dynamics(cfg);
  for (const auto& rec : r.records) {
    REQUIRE(rec.c_numeric);
    REQUIRE(rec.discrepancy);
    CHECK(*rec.discrepancy < 1e-6);
    CHECK(std::abs(*rec.c - *rec.c_numeric) < 1e-6);
    CHECK(rec.engine == "both");
  }
}

TEST_CASE("unsupported initial states go to the numeric engine") {
  auto cfg = dynamics_config(1.0, 0.5, InitialKind::Custom);
  Matrix4c plus = Matrix4c::Constant(complex(0.25, 0.0));  // |+>|+>
  cfg.initial.explicit_state = DensityMatrix(plus, Basis::Computational);
  cfg.samples = 11;
  const auto r = run_dynamics(cfg);
  REQUIRE(r.notices.size() == 1);
  CHECK(r.records.front().engine == "numeric");
  CHECK(*r.records.front().c == doctest::Approx(0.0).epsilon(1e-12));
  for (const auto& rec : r.records) CHECK(!rec.c_numeric);
}

TEST_CASE("output is deterministic across thread counts") {
  auto cfg = surface_config(3.0, 1.0);
  cfg.spot_check_fraction = 0.1;
  cfg.threads = 1;
  const std::string one = csv(run_steady_surface(cfg));
  cfg.threads = 4;
  const std::string four = csv(run_steady_surface(cfg));
  CHECK(one == four);
  CHECK(one == csv(run_steady_surface(cfg)));

  auto m = max_config({1.5, 4.0, 4}, {1.5, 4.0, 4});
  m.threads = 1;
  const std::string a = csv(run_max_surface(m));
  m.threads = 3;
  CHECK(a == csv(run_max_surface(m)));
}

TEST_CASE("csv header, row order and absent values") {
  auto cfg = surface_config(3.0, 3.0);
  cfg.t_mean = GridSpec{0.2, 1.0, 3};
  cfg.delta_t = GridSpec{-1.0, 1.0, 3};
  const auto r = run_steady_surface(cfg);
  REQUIRE(r.records.size() == 9);
  // Row-major: T_mean outer, delta_T inner.
  CHECK(*r.records[1].t_mean == 0.2);
  CHECK(*r.records[1].delta_t == 0.0);
  CHECK(*r.records[3].t_mean == doctest::Approx(0.6).epsilon(1e-15));
  // T_mean = 0.2 with |delta_T| = 1 puts one bath below zero.
  CHECK(!r.records[0].c);
  CHECK(!r.records[2].c);
  CHECK(r.records[1].c);

  const std::string text = csv(r);
  std::istringstream in(text);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "eps1,eps2,K,gamma1,gamma2,T_mean,delta_T,T1,T2,C,C_numeric,discrepancy,p1,p2,p3,p4,engine");
  CHECK(first == "3,3,1,0.02,0.02,0.20000000000000001,-1,-0.29999999999999999,0.69999999999999996,,,,,,,,analytic");
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);

  std::ostringstream js;
  write_json(js, r);
  CHECK(js.str().front() == '[');
  CHECK(js.str().find("\"C\": null") != std::string::npos);
  CHECK(js.str().find("\"T_mean\": 0.2") != std::string::npos);
}

TEST_CASE("numbers round-trip through the writer") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n = 0; n < 1000; ++n) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)));
    CHECK(std::stod(format_number(x)) == x);
  }
}

TEST_CASE("columns by experiment") {
  CHECK(columns(ExperimentKind::Dynamics) ==
        std::vector<std::string>{"eps1", "eps2", "K", "T1", "T2", "gamma1", "gamma2", "t", "C", "C_numeric",
                                 "discrepancy", "p1", "p2", "p3", "p4", "engine"});
  CHECK(columns(ExperimentKind::MaxSurface) ==
        std::vector<std::string>{"eps1", "eps2", "K", "gamma1", "gamma2", "C_max", "argmax_T1", "argmax_T2",
                                 "engine"});
}

TEST_CASE("symmetric surface peaks at equal temperatures") {
  const auto r = run_steady_surface(surface_config(3.0, 3.0));
  const int n = 21;
  double global = -1.0, global_dt = 1.0;
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_c = -1.0;
    for (int j = 0; j < n; ++j) {
      const auto& rec = r.records[i * n + j];
      if (rec.c && *rec.c > best_c) {
        best_c = *rec.c;
        best = j;
      }
      if (rec.c && *rec.c > global) {
        global = *rec.c;
        global_dt = *rec.delta_t;
      }
    }
    // Below T_M ~ 0.5 the concurrence still grows with temperature and the row maximum
    // moves to unequal temperatures; above it the row peaks at delta_T = 0.
    const double tm = *r.records[i * n].t_mean;
    if (best_c > 0.0 && tm > 0.55) CHECK(best == 10);
    if (best_c > 1e-6 && tm < 0.45) CHECK(best != 10);
  }
  CHECK(global_dt == 0.0);
}

TEST_CASE("asymmetric surface peaks away from equal temperatures") {
  const auto r = run_steady_surface(surface_config(3.0, 1.0));
  double global = -1.0, global_dt = 0.0, diagonal = -1.0;
  for (const auto& rec : r.records) {
    if (!rec.c) continue;
    if (*rec.c > global) {
      global = *rec.c;
      global_dt = *rec.delta_t;
    }
    if (std::abs(*rec.delta_t) < 1e-12) diagonal = std::max(diagonal, *rec.c);
  }
  CHECK(std::abs(global_dt) >= 0.2 - 1e-12);
  CHECK(global > diagonal);
}

TEST_CASE("no concurrence above the critical temperature") {
  auto cfg = surface_config(3.0, 3.0);
  const double tc = critical_temperature(cfg.sys);
  cfg.t_mean = GridSpec{tc + 1e-3, tc + 2.0, 9};
  cfg.delta_t = GridSpec{-0.0, 1.0, 2};
  for (const auto& rec : run_steady_surface(cfg).records) {
    if (*rec.delta_t == 0.0) CHECK(*rec.c == 0.0);
  }
}

TEST_CASE("spot checks agree with the analytic engine") {
  auto cfg = surface_config(3.0, 1.0);
  cfg.spot_check_fraction = 0.25;
  const auto r = run_steady_surface(cfg);
  std::size_t checked = 0;
  for (const auto& rec : r.records) {
    if (!rec.c_numeric) continue;
    ++checked;
    CHECK(*rec.discrepancy < 1e-6);
  }
  CHECK(checked > 50);
  CHECK(checked <= 111);  // a quarter of the 441 grid points, invalid ones included
  cfg.spot_check_fraction = 1.0;
  for (const auto& rec : run_steady_surface(cfg).records) CHECK(rec.c.has_value() == rec.c_numeric.has_value());

  cfg.engine = Engine::Numeric;
  cfg.spot_check_fraction = 0.0;
  const auto numeric = run_steady_surface(cfg);
  const auto analytic = run_steady_surface(surface_config(3.0, 1.0));
  for (std::size_t k = 0; k < numeric.records.size(); ++k) {
    if (!analytic.records[k].c) continue;
    CHECK(std::abs(*numeric.records[k].c - *analytic.records[k].c) < 1e-8);
  }
}

TEST_CASE("mirror symmetry of the chain") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 500; ++n) {
    const SystemParams sys = test::random_system(rng);
    const BathParams b = test::random_baths(rng);
    const double c = steady_concurrence(sys, b);
    const double mirrored = steady_concurrence({sys.eps2, sys.eps1, sys.coupling}, {b.t2, b.t1, b.gamma2, b.gamma1});
    CHECK(std::abs(c - mirrored) < 1e-10);
  }
}

TEST_CASE("nelder-mead minimizes smooth functions") {
  const auto rosen = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, 0.1, 5000);
  CHECK(r.value < 1e-12);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
  const auto q = nelder_mead([](const std::vector<double>& x) { return (x[0] - 0.3) * (x[0] - 0.3); }, {2.0}, 0.5);
  CHECK(std::abs(q.x[0] - 0.3) < 1e-6);
}

TEST_CASE("collapsed box recovers the equilibrium maximum") {
  const SystemParams sys{3.0, 3.0, 1.0};
  const auto m = maximize_over_temperatures(sys, 0.02, 0.02, 41, 1e-3, 3.0, true);
  CHECK(m.t1 == m.t2);
  // Fine scan followed by golden-section search of the equilibrium formula.
  double best_t = 0.0, best = -1.0;
  for (int k = 1; k <= 30000; ++k) {
    const double t = 3.0 * k / 30000;
    const double c = equilibrium_concurrence_symmetric(t, sys);
    if (c > best) {
      best = c;
      best_t = t;
    }
  }
  double a = best_t - 1e-4, b = best_t + 1e-4;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    if (equilibrium_concurrence_symmetric(x1, sys) > equilibrium_concurrence_symmetric(x2, sys)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  const double reference = equilibrium_concurrence_symmetric(0.5 * (a + b), sys);
  CHECK(std::abs(m.value - reference) < 1e-10);
  CHECK(std::abs(m.t1 - 0.5 * (a + b)) < 1e-3);
}

TEST_CASE("max surface is mirror symmetric") {
  for (const auto& g : {GridSpec{0.05, 0.95, 11}, GridSpec{1.5, 4.0, 11}}) {
    const auto r = run_max_surface(max_config(g, g));
    REQUIRE(r.records.size() == 121);
    for (int i = 0; i < 11; ++i) {
      for (int j = 0; j < 11; ++j) {
        const auto& a = r.records[i * 11 + j];
        const auto& b = r.records[j * 11 + i];
        REQUIRE(a.c_max);
        CHECK(std::abs(*a.c_max - *b.c_max) < 1e-8);
        CHECK(*a.c_max >= 0.0);
        CHECK(*a.c_max <= 1.0);
      }
    }
  }
}

TEST_CASE("max surface refinement converges with the inner grid") {
  for (const auto& g : {GridSpec{0.05, 0.95, 5}, GridSpec{1.5, 4.0, 5}}) {
    auto cfg = max_config(g, g);
    const auto coarse = run_max_surface(cfg);
    cfg.inner_grid = 82;
    const auto fine = run_max_surface(cfg);
    for (std::size_t k = 0; k < coarse.records.size(); ++k) {
      CHECK(std::abs(*coarse.records[k].c_max - *fine.records[k].c_max) < 1e-4);
    }
  }
}

TEST_CASE("degenerate points are absent from the max surface") {
  // (1, 1) and (-1, -1) sit on the omega_1 = 0 hyperbola eps1 eps2 = K^2.
  const auto r = run_max_surface(max_config({-1.0, 1.0, 3}, {-1.0, 1.0, 3}));
  REQUIRE(r.records.size() == 9);
  for (const auto& rec : r.records) {
    const bool degenerate = std::abs(*rec.eps1 * *rec.eps2 - 1.0) < 1e-12;
    CHECK(degenerate == !rec.c_max);
    CHECK(rec.argmax_t1.has_value() == rec.c_max.has_value());
  }
  CHECK(!r.notices.empty());
}

TEST_CASE("parallel map keeps order and propagates failures") {
  const auto v = parallel_map<int>(1000, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map<int>(100, 4,
                                    [](std::size_t i) -> int {
                                      if (i == 37) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                  std::runtime_error);
}

}  // TEST_SUITE
