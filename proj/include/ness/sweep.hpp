#pragma once

// Experiment harness: concurrence dynamics, steady-state surfaces over
// (T_mean, delta_T), and max-over-temperature surfaces over (eps1, eps2).

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ness/lindblad.hpp"
#include "ness/model.hpp"

namespace ness {

enum class ExperimentKind { Dynamics, SteadySurface, MaxSurface };
enum class Engine { Analytic, Numeric, Both };
enum class InitialKind { Ground, Excited, UpDown, Singlet, Custom };
enum class OutputFormat { Csv, Json };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(Engine engine);
std::string_view to_string(InitialKind kind);
Engine parse_engine(std::string_view s);
InitialKind parse_initial(std::string_view s);
OutputFormat parse_format(std::string_view s);

// Inclusive grid min:max:count.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  std::vector<double> values() const;
};

// "min:max:count"; throws Error(InvalidArgument).
GridSpec parse_grid(std::string_view spec);

struct InitialSpec {
  InitialKind kind = InitialKind::UpDown;
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 1.0;
  complex c12{};
  std::optional<DensityMatrix> explicit_state;  // overrides the selector when set

  DensityMatrix state() const;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Dynamics;
  SystemParams sys{2.0, 1.0, 1.0};
  BathParams baths{1.0, 0.5, 0.02, 0.02};

  // SteadySurface axes.
  std::optional<GridSpec> t_mean;
  std::optional<GridSpec> delta_t;
  // MaxSurface axes.
  std::optional<GridSpec> eps1;
  std::optional<GridSpec> eps2;

  InitialSpec initial;
  double t_end = 250.0;
  int samples = 501;
  Engine engine = Engine::Analytic;
  IntegratorOptions integrator;

  // MaxSurface inner search, temperatures in units of K.
  int inner_grid = 41;
  double t_box_min = 1e-3;
  double t_box_max = 3.0;
  bool equal_temperatures = false;  // restrict the inner search to T1 = T2

  // SteadySurface: fraction of grid points, picked evenly by index, re-evaluated numerically.
  double spot_check_fraction = 0.0;

  int threads = 0;  // 0 = hardware concurrency

  std::string output_path;
  OutputFormat format = OutputFormat::Csv;

  // Throws Error(InvalidArgument) or the physics error of the parameters.
  void validate() const;
};

// One output row. Unset fields are written as absent values.
struct SweepRecord {
  std::optional<double> eps1, eps2, coupling, gamma1, gamma2;
  std::optional<double> t1, t2, t_mean, delta_t, t;
  std::optional<double> c, c_numeric, discrepancy, c_max;
  std::optional<double> p1, p2, p3, p4;
  std::optional<double> argmax_t1, argmax_t2;
  std::string engine;
};

struct SweepResult {
  ExperimentKind kind = ExperimentKind::Dynamics;
  std::vector<SweepRecord> records;
  std::vector<std::string> notices;
};

SweepResult run_dynamics(const ExperimentConfig& cfg);
SweepResult run_steady_surface(const ExperimentConfig& cfg);
SweepResult run_max_surface(const ExperimentConfig& cfg);
// Steady state at the single point (cfg.baths.t1, cfg.baths.t2), as a one-row steady surface.
SweepResult run_steady_point(const ExperimentConfig& cfg);
SweepResult run_experiment(const ExperimentConfig& cfg);

struct MaxConcurrence {
  double value = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

// Coarse grid over the temperature box followed by Nelder-Mead refinement from the best cell.
MaxConcurrence maximize_over_temperatures(const SystemParams& sys, double gamma1, double gamma2,
                                          int inner_grid, double t_min, double t_max,
                                          bool equal_temperatures = false);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Minimizes f from an axis-aligned simplex of edge `step` around x0.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_iterations = 2000,
                             double tolerance = 1e-14);

// Evaluates f(0..n-1) on worker threads and returns results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& f);

}  // namespace ness

#include "ness/detail/parallel.hpp"
