#include <cmath>

#include "ffgap/closedform.hpp"

namespace ffgap {

double xxz_epsilon_closed(double xi, int m) {
  if (!(xi > 0.0)) throw ValidationError("xxz_epsilon_closed: xi must be positive");
  if (m < 1) throw ValidationError("xxz_epsilon_closed: m must be at least 1");
  const double q2 = std::exp(-2.0 * xi);
  // 1 - e^{-2kξ} via expm1 keeps precision for small ξ.
  const double num = -std::expm1(-2.0 * m * xi);
  const double den = -std::expm1(-2.0 * (m + 1) * xi);
  return q2 / (1.0 + q2) * (num / den);
}

double xxz_epsilon_limit(double xi) {
  if (!(xi > 0.0)) throw ValidationError("xxz_epsilon_limit: xi must be positive");
  const double q2 = std::exp(-2.0 * xi);
  return q2 / (1.0 + q2);
}

XXZEpsilonFormula::XXZEpsilonFormula(double xi) : m_xi(xi) {
  if (!(xi > 0.0)) throw ValidationError("XXZEpsilonFormula: xi must be positive");
}

double XXZEpsilonFormula::operator()(int m) {
  auto it = m_cache.find(m);
  if (it != m_cache.end()) return it->second;
  const double value = xxz_epsilon_closed(m_xi, m);
  m_cache.emplace(m, value);
  return value;
}

}  // namespace ffgap
