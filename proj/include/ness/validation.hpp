#pragma once

// Oracle-agreement suite: analytic engine against the numerical Lindblad generator.

#include <iosfwd>
#include <string>
#include <vector>

namespace ness {

struct ValidationCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return error < tolerance; }
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;
  bool passed() const;
};

struct ValidationOptions {
  double t_end = 250.0;
  int samples = 501;
  int grid = 21;
  int threads = 0;
};

ValidationReport run_validation(const ValidationOptions& opts = {});

void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace ness
