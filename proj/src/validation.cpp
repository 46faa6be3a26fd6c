#include "ness/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ness/analytic.hpp"
#include "ness/entanglement.hpp"
#include "ness/lindblad.hpp"
#include "ness/rates.hpp"
#include "ness/sweep.hpp"

namespace ness {

namespace {

std::string label(const char* fmt, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

double trajectory_error(const SystemParams& sys, const BathParams& baths, const DensityMatrix& rho0,
                        const ValidationOptions& opts) {
  const auto gen = build_generator(sys, baths);
  const auto traj = integrate(gen, rho0, opts.t_end, opts.samples);
  double err = 0.0;
  for (const auto& p : traj) {
    err = std::max(err, max_entry_difference(evolve(rho0, sys, baths, p.t), p.rho));
  }
  return err;
}

double surface_error(const SystemParams& sys, const ValidationOptions& opts) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SteadySurface;
  cfg.sys = sys;
  cfg.baths = {0.0, 0.0, 0.02, 0.02};
  cfg.t_mean = GridSpec{0.05, 2.5, opts.grid};
  cfg.delta_t = GridSpec{-2.0, 2.0, opts.grid};
  cfg.engine = Engine::Both;
  cfg.threads = opts.threads;
  double err = 0.0;
  for (const auto& r : run_steady_surface(cfg).records) {
    if (r.discrepancy) err = std::max(err, *r.discrepancy);
  }
  return err;
}

double gibbs_distance(const std::array<double, 4>& p, const DensityMatrix& gibbs) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(p[i] - gibbs(i, i).real()));
  return d;
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

ValidationReport run_validation(const ValidationOptions& opts) {
  ValidationReport report;
  const SystemParams fig1{2.0, 1.0, 1.0};

  for (const auto& [t1, t2] : {std::pair{0.5, 0.2}, {1.0, 0.5}, {1.5, 1.0}}) {
    report.checks.push_back({label("trajectory |1,0> T1=%g T2=%g", t1, t2),
                             trajectory_error(fig1, {t1, t2, 0.02, 0.02}, product_state(1, 0), opts), 1e-6});
  }
  const BathParams fig2{1.0, 0.5, 0.02, 0.02};
  report.checks.push_back({"trajectory |1,1> T1=1 T2=0.5",
                           trajectory_error(fig1, fig2, product_state(1, 1), opts), 1e-6});
  report.checks.push_back({"trajectory singlet T1=1 T2=0.5",
                           trajectory_error(fig1, fig2, singlet_state(), opts), 1e-6});
  report.checks.push_back({"trajectory |1,0> unequal gamma",
                           trajectory_error(fig1, {1.0, 0.5, 0.01, 0.03}, product_state(1, 0), opts), 1e-6});

  report.checks.push_back({"steady surface eps1=3 eps2=3", surface_error({3.0, 3.0, 1.0}, opts), 1e-8});
  report.checks.push_back({"steady surface eps1=3 eps2=1", surface_error({3.0, 1.0, 1.0}, opts), 1e-8});

  for (double t : {0.5, 1.0, 2.0}) {
    const BathParams baths{t, t, 0.02, 0.02};
    const auto gen = build_generator(fig1, baths);
    const auto gibbs = gibbs_state(gen.eig, t);
    report.checks.push_back({label("detailed balance T=%g", t, 0.0),
                             max_entry_difference(steady_state_numeric(gen), gibbs), 1e-10});

    const auto diag = labeling_diagnostics(rate_set(fig1, baths));
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "labeling T=%g: |p - gibbs| commutator %.3g, printed %.3g, printed with l3<->l4 %.3g", t,
                  gibbs_distance(diag.commutator, gibbs), gibbs_distance(diag.subscript, gibbs),
                  gibbs_distance(diag.subscript_swapped, gibbs));
    report.notes.emplace_back(buf);
  }
  return report;
}

void print_report(std::ostream& os, const ValidationReport& report) {
  for (const auto& c : report.checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-40s error %.3e  tolerance %.1e\n", c.passed() ? "ok" : "FAIL",
                  c.name.c_str(), c.error, c.tolerance);
    os << buf;
  }
  for (const auto& n : report.notes) os << "note " << n << '\n';
  os << (report.passed() ? "all checks passed" : "oracle disagreement") << '\n';
}

}  // namespace ness
