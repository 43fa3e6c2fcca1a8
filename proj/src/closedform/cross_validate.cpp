#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffgap/closedform.hpp"
#include "ffgap/models.hpp"

namespace ffgap {

std::string CrossValidationReport::describe() const {
  std::ostringstream out;
  out << name << ": " << (passed ? "pass" : "FAIL") << " (max disagreement "
      << format_double(max_disagreement) << ", tolerance " << format_double(tolerance) << ")";
  for (const auto& [label, value] : values) out << "\n  " << label << " = " << format_double(value);
  return out.str();
}

namespace {

void finish(CrossValidationReport& report) {
  double worst = 0.0;
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    for (std::size_t j = i + 1; j < report.values.size(); ++j) {
      worst = std::max(worst, std::abs(report.values[i].second - report.values[j].second));
    }
  }
  report.max_disagreement = worst;
  report.passed = worst <= report.tolerance;
}

}  // namespace

CrossValidationReport cross_validate_aklt(int m, int n, const SolverOptions& options) {
  std::ostringstream name;
  name << "aklt epsilon(" << m << "," << n << ")";
  CrossValidationReport report;
  report.name = name.str();
  report.tolerance = 2e-9;

  const Eigen::VectorXd spectrum = aklt_A_spectrum(m, n);
  report.values.emplace_back("brute force", epsilon(aklt_model(), m, n, options).epsilon);
  report.values.emplace_back("16x16 fifth eigenvalue", spectrum(4));
  report.values.emplace_back("lambda formulas", aklt_lambda(m, n).epsilon);
  finish(report);
  return report;
}

CrossValidationReport cross_validate_xxz(double xi, int m, const SolverOptions& options) {
  if (m > 8) throw ValidationError("cross_validate_xxz: m must be at most 8");
  std::ostringstream name;
  name << "xxz epsilon(" << m << ",1) at xi=" << format_double(xi);
  CrossValidationReport report;
  report.name = name.str();
  report.tolerance = 1e-10;
  report.values.emplace_back("brute force", epsilon(xxz_model(xi), m, 1, options).epsilon);
  report.values.emplace_back("closed form", xxz_epsilon_closed(xi, m));
  finish(report);
  return report;
}

}  // namespace ffgap
