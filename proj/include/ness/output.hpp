#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ness/sweep.hpp"

namespace ness {

// Column names, in order, for a given experiment kind.
std::vector<std::string> columns(ExperimentKind kind);

// Round-trip formatting ("%.17g").
std::string format_number(double value);

// CSV: header row then one row per record; absent values are empty fields.
void write_csv(std::ostream& os, const SweepResult& result);

// JSON: array of records, one object per row keyed by column name; absent values are null.
void write_json(std::ostream& os, const SweepResult& result);

void write_result(std::ostream& os, const SweepResult& result, OutputFormat format);

}  // namespace ness
