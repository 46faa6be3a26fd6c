// ness: steady-state entanglement of two exchange-coupled qubits in separate thermal baths.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ness/error.hpp"
#include "ness/output.hpp"
#include "ness/sweep.hpp"
#include "ness/validation.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitOracle = 4;
constexpr int kExitRuntime = 1;

struct Options {
  double eps1 = 2.0, eps2 = 1.0, coupling = 1.0;
  double t1 = 1.0, t2 = 0.5, gamma1 = 0.02, gamma2 = 0.02;
  std::string initial = "up-down";
  double p0 = 0.0, p1 = 0.0, p2 = 1.0, c12_re = 0.0, c12_im = 0.0;
  double t_end = 250.0;
  int samples = 501;
  std::string engine = "analytic";
  std::vector<std::string> grids;
  std::string out;
  std::string format = "csv";
  int inner_grid = 41;
  std::string t_box = "0.001:3";
  bool equal_temperatures = false;
  double spot_check = 0.0;
  int threads = 0;
};

// "[axis=]min:max:count" entries, positional entries fill `order` left to right.
std::map<std::string, ness::GridSpec> assign_grids(const std::vector<std::string>& specs,
                                                   const std::vector<std::string>& order,
                                                   const std::map<std::string, std::string>& aliases) {
  std::map<std::string, ness::GridSpec> out;
  std::size_t next = 0;
  for (const auto& spec : specs) {
    std::string axis;
    std::string range = spec;
    if (const auto eq = spec.find('='); eq != std::string::npos) {
      axis = spec.substr(0, eq);
      range = spec.substr(eq + 1);
      if (const auto a = aliases.find(axis); a != aliases.end()) axis = a->second;
      if (std::find(order.begin(), order.end(), axis) == order.end()) {
        throw ness::Error(ness::ErrorCode::InvalidArgument, "unknown grid axis '" + axis + "'");
      }
    } else {
      while (next < order.size() && out.count(order[next])) ++next;
      if (next == order.size()) throw ness::Error(ness::ErrorCode::InvalidArgument, "too many --grid entries");
      axis = order[next];
    }
    if (out.count(axis)) throw ness::Error(ness::ErrorCode::InvalidArgument, "grid axis '" + axis + "' given twice");
    out[axis] = ness::parse_grid(range);
  }
  return out;
}

ness::ExperimentConfig make_config(const Options& o, ness::ExperimentKind kind) {
  ness::ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.sys = {o.eps1, o.eps2, o.coupling};
  cfg.baths = {o.t1, o.t2, o.gamma1, o.gamma2};
  cfg.initial.kind = ness::parse_initial(o.initial);
  cfg.initial.p0 = o.p0;
  cfg.initial.p1 = o.p1;
  cfg.initial.p2 = o.p2;
  cfg.initial.c12 = {o.c12_re, o.c12_im};
  cfg.t_end = o.t_end;
  cfg.samples = o.samples;
  cfg.engine = ness::parse_engine(o.engine);
  cfg.format = ness::parse_format(o.format);
  cfg.output_path = o.out;
  cfg.inner_grid = o.inner_grid;
  cfg.equal_temperatures = o.equal_temperatures;
  cfg.spot_check_fraction = o.spot_check;
  cfg.threads = o.threads;

  const auto box = o.t_box.find(':');
  if (box == std::string::npos) throw ness::Error(ness::ErrorCode::InvalidArgument, "--t-box must be min:max");
  try {
    cfg.t_box_min = std::stod(o.t_box.substr(0, box));
    cfg.t_box_max = std::stod(o.t_box.substr(box + 1));
  } catch (const std::exception&) {
    throw ness::Error(ness::ErrorCode::InvalidArgument, "--t-box must be min:max");
  }

  if (kind == ness::ExperimentKind::SteadySurface) {
    auto g = assign_grids(o.grids, {"t_mean", "delta_t"},
                          {{"tm", "t_mean"}, {"T_mean", "t_mean"}, {"dt", "delta_t"}, {"delta_T", "delta_t"}});
    cfg.t_mean = g.count("t_mean") ? g["t_mean"] : ness::GridSpec{0.05, 2.5, 21};
    cfg.delta_t = g.count("delta_t") ? g["delta_t"] : ness::GridSpec{-2.0, 2.0, 21};
  } else if (kind == ness::ExperimentKind::MaxSurface) {
    auto g = assign_grids(o.grids, {"eps1", "eps2"}, {});
    cfg.eps1 = g.count("eps1") ? g["eps1"] : ness::GridSpec{0.05, 0.95, 11};
    cfg.eps2 = g.count("eps2") ? g["eps2"] : ness::GridSpec{0.05, 0.95, 11};
  } else if (!o.grids.empty()) {
    throw ness::Error(ness::ErrorCode::InvalidArgument, "--grid is not used by this subcommand");
  }
  return cfg;
}

void emit(const ness::SweepResult& result, const ness::ExperimentConfig& cfg) {
  for (const auto& n : result.notices) std::cerr << "notice: " << n << '\n';
  if (cfg.output_path.empty()) {
    ness::write_result(std::cout, result, cfg.format);
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw ness::Error(ness::ErrorCode::InvalidArgument, "cannot open " + cfg.output_path);
  ness::write_result(file, result, cfg.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of two coupled qubits between thermal baths"};
  app.set_config("--config", "", "key=value file with the same option names; flags override it");
  app.require_subcommand(1);

  Options o;
  app.add_option("--eps1", o.eps1, "qubit 1 splitting")->capture_default_str();
  app.add_option("--eps2", o.eps2, "qubit 2 splitting")->capture_default_str();
  app.add_option("--coupling", o.coupling, "exchange coupling K")->capture_default_str();
  app.add_option("--t1", o.t1, "bath 1 temperature")->capture_default_str();
  app.add_option("--t2", o.t2, "bath 2 temperature")->capture_default_str();
  app.add_option("--gamma1", o.gamma1, "bath 1 coupling")->capture_default_str();
  app.add_option("--gamma2", o.gamma2, "bath 2 coupling")->capture_default_str();
  app.add_option("--initial", o.initial, "ground|excited|up-down|singlet|custom")->capture_default_str();
  app.add_option("--p0", o.p0, "custom initial state: |00> population");
  app.add_option("--p1", o.p1, "custom initial state: |01> population");
  app.add_option("--p2", o.p2, "custom initial state: |10> population");
  app.add_option("--c12-re", o.c12_re, "custom initial state: Re <01|rho|10>");
  app.add_option("--c12-im", o.c12_im, "custom initial state: Im <01|rho|10>");
  app.add_option("--t-end", o.t_end, "final time")->capture_default_str();
  app.add_option("--samples", o.samples, "time samples including t=0")->capture_default_str();
  app.add_option("--engine", o.engine, "analytic|numeric|both")->capture_default_str();
  app.add_option("--grid", o.grids, "[axis=]min:max:count, repeatable");
  app.add_option("--out", o.out, "output path (stdout if omitted)");
  app.add_option("--format", o.format, "csv|json")->capture_default_str();
  app.add_option("--inner-grid", o.inner_grid, "max-surface coarse grid per temperature axis")->capture_default_str();
  app.add_option("--t-box", o.t_box, "max-surface temperature box min:max in units of K")->capture_default_str();
  app.add_flag("--equal-temperatures", o.equal_temperatures, "max-surface: restrict to T1 = T2");
  app.add_option("--spot-check", o.spot_check, "steady-surface numeric spot-check fraction")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();

  auto* dynamics = app.add_subcommand("dynamics", "concurrence trace C(t)")->fallthrough();
  auto* steady_surface = app.add_subcommand("steady-surface", "C_inf over (T_mean, delta_T)")->fallthrough();
  auto* max_surface = app.add_subcommand("max-surface", "max over temperatures of C_inf over (eps1, eps2)")->fallthrough();
  auto* validate = app.add_subcommand("validate", "analytic vs numeric agreement report")->fallthrough();
  auto* steady = app.add_subcommand("steady", "single-point steady state")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  try {
    if (validate->parsed()) {
      ness::ValidationOptions vo;
      vo.threads = o.threads;
      const auto report = ness::run_validation(vo);
      ness::print_report(std::cout, report);
      return report.passed() ? 0 : kExitOracle;
    }
    ness::ExperimentKind kind = ness::ExperimentKind::Dynamics;
    if (steady_surface->parsed() || steady->parsed()) kind = ness::ExperimentKind::SteadySurface;
    if (max_surface->parsed()) kind = ness::ExperimentKind::MaxSurface;
    (void)dynamics;

    if (steady->parsed()) {
      if (!o.grids.empty()) throw ness::Error(ness::ErrorCode::InvalidArgument, "--grid is not used by steady");
      auto cfg = make_config(o, ness::ExperimentKind::Dynamics);
      cfg.kind = ness::ExperimentKind::SteadySurface;
      emit(ness::run_steady_point(cfg), cfg);
      return 0;
    }
    const auto cfg = make_config(o, kind);
    emit(ness::run_experiment(cfg), cfg);
    return 0;
  } catch (const ness::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.is_degenerate_physics()) return kExitDegenerate;
    switch (e.code()) {
      case ness::ErrorCode::StepSizeUnderflow:
      case ness::ErrorCode::NonUniqueKernel:
      case ness::ErrorCode::InvalidState:
        return kExitRuntime;
      default:
        return kExitInvalidConfig;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
