#include "ness/output.hpp"

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <utility>

#include "ness/error.hpp"

namespace ness {

namespace {

using Field = std::optional<double> SweepRecord::*;

const std::vector<std::pair<std::string, Field>>& field_table(ExperimentKind kind) {
  static const std::vector<std::pair<std::string, Field>> dynamics{
      {"eps1", &SweepRecord::eps1},     {"eps2", &SweepRecord::eps2},
      {"K", &SweepRecord::coupling},    {"T1", &SweepRecord::t1},
      {"T2", &SweepRecord::t2},         {"gamma1", &SweepRecord::gamma1},
      {"gamma2", &SweepRecord::gamma2}, {"t", &SweepRecord::t},
      {"C", &SweepRecord::c},           {"C_numeric", &SweepRecord::c_numeric},
      {"discrepancy", &SweepRecord::discrepancy},
      {"p1", &SweepRecord::p1},         {"p2", &SweepRecord::p2},
      {"p3", &SweepRecord::p3},         {"p4", &SweepRecord::p4},
  };
  static const std::vector<std::pair<std::string, Field>> steady{
      {"eps1", &SweepRecord::eps1},       {"eps2", &SweepRecord::eps2},
      {"K", &SweepRecord::coupling},      {"gamma1", &SweepRecord::gamma1},
      {"gamma2", &SweepRecord::gamma2},   {"T_mean", &SweepRecord::t_mean},
      {"delta_T", &SweepRecord::delta_t}, {"T1", &SweepRecord::t1},
      {"T2", &SweepRecord::t2},           {"C", &SweepRecord::c},
      {"C_numeric", &SweepRecord::c_numeric},
      {"discrepancy", &SweepRecord::discrepancy},
      {"p1", &SweepRecord::p1},           {"p2", &SweepRecord::p2},
      {"p3", &SweepRecord::p3},           {"p4", &SweepRecord::p4},
  };
  static const std::vector<std::pair<std::string, Field>> maximum{
      {"eps1", &SweepRecord::eps1},     {"eps2", &SweepRecord::eps2},
      {"K", &SweepRecord::coupling},    {"gamma1", &SweepRecord::gamma1},
      {"gamma2", &SweepRecord::gamma2}, {"C_max", &SweepRecord::c_max},
      {"argmax_T1", &SweepRecord::argmax_t1},
      {"argmax_T2", &SweepRecord::argmax_t2},
  };
  switch (kind) {
    case ExperimentKind::Dynamics: return dynamics;
    case ExperimentKind::SteadySurface: return steady;
    case ExperimentKind::MaxSurface: return maximum;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment kind");
}

}  // namespace

std::vector<std::string> columns(ExperimentKind kind) {
  std::vector<std::string> names;
  for (const auto& [name, field] : field_table(kind)) names.push_back(name);
  names.push_back("engine");
  return names;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  const auto& table = field_table(result.kind);
  const auto names = columns(result.kind);
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
  for (const auto& r : result.records) {
    for (const auto& [name, field] : table) {
      if (const auto& v = r.*field) os << format_number(*v);
      os << ',';
    }
    os << r.engine << '\n';
  }
}

void write_json(std::ostream& os, const SweepResult& result) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    nlohmann::ordered_json row;
    for (const auto& [name, field] : field_table(result.kind)) {
      const auto& v = r.*field;
      row[name] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    }
    row["engine"] = r.engine;
    records.push_back(std::move(row));
  }
  os << records.dump(2) << '\n';
}

void write_result(std::ostream& os, const SweepResult& result, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(os, result);
  } else {
    write_csv(os, result);
  }
}

}  // namespace ness
