#include "ness/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "ness/analytic.hpp"
#include "ness/entanglement.hpp"
#include "ness/error.hpp"
#include "ness/rates.hpp"

namespace ness {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double parse_double(std::string_view s, std::string_view context) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    invalid("cannot parse number '" + std::string(s) + "' in " + std::string(context));
  }
  return value;
}

SweepRecord base_record(const ExperimentConfig& cfg, const SystemParams& sys) {
  SweepRecord r;
  r.eps1 = sys.eps1;
  r.eps2 = sys.eps2;
  r.coupling = sys.coupling;
  r.gamma1 = cfg.baths.gamma1;
  r.gamma2 = cfg.baths.gamma2;
  r.engine = std::string(to_string(cfg.engine));
  return r;
}

void set_populations(SweepRecord& r, const DensityMatrix& rho_eig) {
  r.p1 = rho_eig(0, 0).real();
  r.p2 = rho_eig(1, 1).real();
  r.p3 = rho_eig(2, 2).real();
  r.p4 = rho_eig(3, 3).real();
}

std::vector<double> time_grid(double t_end, int samples) {
  if (samples == 1) return {0.0};
  std::vector<double> times(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) times[k] = t_end * k / (samples - 1);
  times.back() = t_end;
  return times;
}

// Spot check point k when the running count floor(k f) advances.
bool spot_checked(std::size_t k, double fraction) {
  if (fraction <= 0.0) return false;
  if (fraction >= 1.0) return true;
  return std::floor((k + 1) * fraction) > std::floor(k * fraction);
}

double snap_zero(double t) { return std::abs(t) < 1e-12 ? 0.0 : t; }

SweepRecord steady_record(const ExperimentConfig& cfg, const EigenStructure& eig, double t_mean,
                          double delta_t, bool spot_check) {
  SweepRecord r = base_record(cfg, cfg.sys);
  r.t_mean = t_mean;
  r.delta_t = delta_t;
  const double t1 = snap_zero(t_mean + 0.5 * delta_t);
  const double t2 = snap_zero(t_mean - 0.5 * delta_t);
  r.t1 = t1;
  r.t2 = t2;
  if (t1 < 0.0 || t2 < 0.0) return r;  // outside the physical quadrant

  const BathParams baths{t1, t2, cfg.baths.gamma1, cfg.baths.gamma2};
  if (cfg.engine != Engine::Numeric) {
    r.c = steady_concurrence(cfg.sys, baths);
    set_populations(r, change_basis(steady_state_matrix(cfg.sys, baths), Basis::Eigen, eig));
  }
  if (cfg.engine != Engine::Analytic || spot_check) {
    const auto rho = steady_state_numeric(build_generator(cfg.sys, baths));
    const double cn = concurrence(change_basis(rho, Basis::Computational, eig)).value;
    if (cfg.engine == Engine::Numeric) {
      r.c = cn;
      set_populations(r, rho);
    } else {
      r.c_numeric = cn;
      r.discrepancy = std::abs(*r.c - cn);
    }
  }
  return r;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Dynamics: return "dynamics";
    case ExperimentKind::SteadySurface: return "steady-surface";
    case ExperimentKind::MaxSurface: return "max-surface";
  }
  return "unknown";
}

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::Analytic: return "analytic";
    case Engine::Numeric: return "numeric";
    case Engine::Both: return "both";
  }
  return "unknown";
}

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::Ground: return "ground";
    case InitialKind::Excited: return "excited";
    case InitialKind::UpDown: return "up-down";
    case InitialKind::Singlet: return "singlet";
    case InitialKind::Custom: return "custom";
  }
  return "unknown";
}

Engine parse_engine(std::string_view s) {
  if (s == "analytic") return Engine::Analytic;
  if (s == "numeric") return Engine::Numeric;
  if (s == "both") return Engine::Both;
  invalid("unknown engine '" + std::string(s) + "'");
}

InitialKind parse_initial(std::string_view s) {
  if (s == "ground") return InitialKind::Ground;
  if (s == "excited") return InitialKind::Excited;
  if (s == "up-down") return InitialKind::UpDown;
  if (s == "singlet") return InitialKind::Singlet;
  if (s == "custom") return InitialKind::Custom;
  invalid("unknown initial state '" + std::string(s) + "'");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  invalid("unknown format '" + std::string(s) + "'");
}

std::vector<double> GridSpec::values() const {
  if (count < 2) invalid("grid count must be at least 2");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) v[k] = min + (max - min) * k / (count - 1);
  v.back() = max;
  return v;
}

GridSpec parse_grid(std::string_view spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string_view::npos ? a : spec.find(':', a + 1);
  if (b == std::string_view::npos || spec.find(':', b + 1) != std::string_view::npos) {
    invalid("grid must be min:max:count, got '" + std::string(spec) + "'");
  }
  GridSpec g;
  g.min = parse_double(spec.substr(0, a), "grid");
  g.max = parse_double(spec.substr(a + 1, b - a - 1), "grid");
  const auto count = spec.substr(b + 1);
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), g.count);
  if (ec != std::errc{} || ptr != count.data() + count.size()) {
    invalid("grid count must be an integer, got '" + std::string(count) + "'");
  }
  if (g.count < 2) invalid("grid count must be at least 2");
  if (!(g.max > g.min)) invalid("grid max must exceed min");
  return g;
}

DensityMatrix InitialSpec::state() const {
  if (explicit_state) {
    if (explicit_state->basis() != Basis::Computational) {
      throw Error(ErrorCode::WrongBasis, "initial state must be given in the computational basis");
    }
    if (!validate_state(*explicit_state).valid()) invalid("initial state is not a density matrix");
    return *explicit_state;
  }
  switch (kind) {
    case InitialKind::Ground: return product_state(0, 0);
    case InitialKind::Excited: return product_state(1, 1);
    case InitialKind::UpDown: return product_state(1, 0);
    case InitialKind::Singlet: return singlet_state();
    case InitialKind::Custom: return initial_state(p0, p1, p2, c12);
  }
  invalid("unknown initial state");
}

void ExperimentConfig::validate() const {
  check(sys);
  switch (kind) {
    case ExperimentKind::Dynamics:
      check(baths);
      if (!(t_end > 0.0) || !std::isfinite(t_end)) invalid("t_end must be positive");
      if (samples < 1) invalid("samples must be at least 1");
      if (!validate_state(initial.state()).valid()) invalid("initial state is not a density matrix");
      break;
    case ExperimentKind::SteadySurface:
      if (!t_mean || !delta_t) invalid("steady-surface needs t_mean and delta_t grids");
      t_mean->values();
      delta_t->values();
      check(BathParams{0.0, 0.0, baths.gamma1, baths.gamma2});
      if (!(spot_check_fraction >= 0.0 && spot_check_fraction <= 1.0)) {
        invalid("spot-check fraction must lie in [0, 1]");
      }
      break;
    case ExperimentKind::MaxSurface:
      if (!eps1 || !eps2) invalid("max-surface needs eps1 and eps2 grids");
      eps1->values();
      eps2->values();
      check(BathParams{0.0, 0.0, baths.gamma1, baths.gamma2});
      if (inner_grid < 2) invalid("inner grid must be at least 2");
      if (!(t_box_min > 0.0 && t_box_max > t_box_min)) invalid("temperature box must satisfy 0 < min < max");
      break;
  }
  if (threads < 0) invalid("threads must be non-negative");
}

SweepResult run_dynamics(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.kind = ExperimentKind::Dynamics;

  const auto eig = eigenstructure(cfg.sys);
  const DensityMatrix rho0 = cfg.initial.state();
  const auto times = time_grid(cfg.t_end, cfg.samples);

  Engine engine = cfg.engine;
  std::vector<DensityMatrix> analytic;
  if (engine != Engine::Numeric) {
    try {
      analytic.reserve(times.size());
      for (double t : times) analytic.push_back(evolve(rho0, cfg.sys, cfg.baths, t));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedInitialState) throw;
      out.notices.push_back("analytic propagator does not cover this initial state; using numeric engine");
      analytic.clear();
      engine = Engine::Numeric;
    }
  }

  std::vector<TrajectoryPoint> numeric;
  if (engine != Engine::Analytic) {
    const auto gen = build_generator(cfg.sys, cfg.baths);
    numeric = integrate(gen, rho0, times, cfg.integrator);
  }

  out.records.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    SweepRecord r = base_record(cfg, cfg.sys);
    r.engine = std::string(to_string(engine));
    r.t1 = cfg.baths.t1;
    r.t2 = cfg.baths.t2;
    r.t = times[k];
    if (engine == Engine::Numeric) {
      const auto& rho = numeric[k].rho;
      r.c = concurrence(rho).value;
      set_populations(r, change_basis(rho, Basis::Eigen, eig));
    } else {
      const auto& rho = analytic[k];
      r.c = concurrence(rho).value;
      set_populations(r, change_basis(rho, Basis::Eigen, eig));
      if (engine == Engine::Both) {
        r.c_numeric = concurrence(numeric[k].rho).value;
        r.discrepancy = max_entry_difference(rho, numeric[k].rho);
      }
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

SweepResult run_steady_surface(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.kind = ExperimentKind::SteadySurface;

  const auto tm = cfg.t_mean->values();
  const auto dt = cfg.delta_t->values();
  const auto eig = eigenstructure(cfg.sys);
  check_transitions(eig);

  const std::size_t n = tm.size() * dt.size();
  out.records = parallel_map<SweepRecord>(n, cfg.threads, [&](std::size_t k) {
    return steady_record(cfg, eig, tm[k / dt.size()], dt[k % dt.size()], spot_checked(k, cfg.spot_check_fraction));
  });
  return out;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_iterations,
                             double tolerance) {
  const std::size_t d = x0.size();
  std::vector<std::vector<double>> simplex(d + 1, x0);
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(d + 1);
  for (std::size_t i = 0; i <= d; ++i) values[i] = f(simplex[i]);

  const auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double w) {
    std::vector<double> p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = a[i] + w * (b[i] - a[i]);
    return p;
  };

  int it = 0;
  std::vector<std::size_t> order(d + 1);
  for (; it < max_iterations; ++it) {
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[d - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t j = 0; j < d; ++j) size = std::max(size, std::abs(simplex[i][j] - simplex[best][j]));
    }
    if (values[worst] - values[best] <= tolerance && size <= 1e-10) break;
    if (size <= 1e-13) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j] / d;
    }

    const auto reflected = combine(centroid, simplex[worst], -1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      const auto expanded = combine(centroid, simplex[worst], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const auto contracted = combine(centroid, outside ? reflected : simplex[worst], 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      simplex[i] = combine(simplex[best], simplex[i], 0.5);
      values[i] = f(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

MaxConcurrence maximize_over_temperatures(const SystemParams& sys, double gamma1, double gamma2,
                                          int inner_grid, double t_min, double t_max,
                                          bool equal_temperatures) {
  if (inner_grid < 2) invalid("inner grid must be at least 2");
  if (!(t_min > 0.0 && t_max > t_min)) invalid("temperature box must satisfy 0 < min < max");

  const auto clamp = [&](double t) { return std::clamp(t, t_min, t_max); };
  const auto value = [&](double t1, double t2) {
    return steady_concurrence(sys, BathParams{clamp(t1), clamp(t2), gamma1, gamma2});
  };

  // Coarse grid t_max k / n, k = 1..n, floored at t_min.
  std::vector<double> nodes(static_cast<std::size_t>(inner_grid));
  for (int k = 0; k < inner_grid; ++k) nodes[k] = clamp(t_max * (k + 1) / inner_grid);
  const double cell = t_max / inner_grid;

  MaxConcurrence best{-1.0, 0.0, 0.0};
  if (equal_temperatures) {
    for (double t : nodes) {
      const double c = value(t, t);
      if (c > best.value) best = {c, t, t};
    }
    const auto nm = nelder_mead([&](const std::vector<double>& x) { return -value(x[0], x[0]); },
                                {best.t1}, 0.5 * cell);
    if (-nm.value > best.value) best = {-nm.value, clamp(nm.x[0]), clamp(nm.x[0])};
    return best;
  }

  for (double t1 : nodes) {
    for (double t2 : nodes) {
      const double c = value(t1, t2);
      if (c > best.value) best = {c, t1, t2};
    }
  }
  const auto nm = nelder_mead([&](const std::vector<double>& x) { return -value(x[0], x[1]); },
                              {best.t1, best.t2}, 0.5 * cell);
  if (-nm.value > best.value) best = {-nm.value, clamp(nm.x[0]), clamp(nm.x[1])};
  return best;
}

SweepResult run_max_surface(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.kind = ExperimentKind::MaxSurface;

  const auto e1 = cfg.eps1->values();
  const auto e2 = cfg.eps2->values();
  const double k = cfg.sys.coupling;
  const std::size_t n = e1.size() * e2.size();
  out.records = parallel_map<SweepRecord>(n, cfg.threads, [&](std::size_t idx) {
    const SystemParams sys{e1[idx / e2.size()], e2[idx % e2.size()], k};
    SweepRecord r = base_record(cfg, sys);
    try {
      const auto m = maximize_over_temperatures(sys, cfg.baths.gamma1, cfg.baths.gamma2, cfg.inner_grid,
                                                cfg.t_box_min * k, cfg.t_box_max * k,
                                                cfg.equal_temperatures);
      r.c_max = m.value;
      r.argmax_t1 = m.t1;
      r.argmax_t2 = m.t2;
    } catch (const Error& e) {
      if (!e.is_degenerate_physics()) throw;  // degenerate points are reported as absent
    }
    return r;
  });
  for (const auto& r : out.records) {
    if (!r.c_max) {
      out.notices.push_back("points with a zero transition frequency are absent from the max surface");
      break;
    }
  }
  return out;
}

SweepResult run_steady_point(const ExperimentConfig& cfg) {
  check(cfg.sys);
  check(cfg.baths);
  const auto eig = eigenstructure(cfg.sys);
  check_transitions(eig);
  SweepResult out;
  out.kind = ExperimentKind::SteadySurface;
  const double tm = 0.5 * (cfg.baths.t1 + cfg.baths.t2);
  const double dt = cfg.baths.t1 - cfg.baths.t2;
  out.records.push_back(steady_record(cfg, eig, tm, dt, false));
  out.records.back().t1 = cfg.baths.t1;
  out.records.back().t2 = cfg.baths.t2;
  return out;
}

SweepResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Dynamics: return run_dynamics(cfg);
    case ExperimentKind::SteadySurface: return run_steady_surface(cfg);
    case ExperimentKind::MaxSurface: return run_max_surface(cfg);
  }
  invalid("unknown experiment kind");
}

}  // namespace ness
