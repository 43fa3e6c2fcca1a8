#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffgap/martingale.hpp"

namespace ffgap {

AlphaBeta alpha_beta(double eps) {
  if (!(eps >= 0.0) || !(eps < 0.5)) {
    std::ostringstream msg;
    msg << "alpha_beta: epsilon must lie in [0, 1/2) (got " << eps << ")";
    throw ValidationError(msg.str());
  }
  const double a = std::sqrt(1.0 - eps);
  const double b = std::sqrt(eps);
  return AlphaBeta{(a - b) * (a - b), a * (a - b)};
}

namespace {

double bound_from(double gamma, double eps) {
  return gamma * (1.0 - 2.0 * std::sqrt(eps * (1.0 - eps)));
}

}  // namespace

BoundCertificate bound_certificate(const ModelSpec& model, int m, int n,
                                   const BoundOptions& options) {
  if (m < 1 || n < m) {
    std::ostringstream msg;
    msg << "bound_certificate: requires 1 <= m <= n (got m=" << m << ", n=" << n << ")";
    throw ValidationError(msg.str());
  }
  const EpsilonSup eps = epsilon_sup(model, m, n, std::max(options.m_max, m), options.numerics);
  if (eps.value >= 0.5) {
    std::ostringstream msg;
    msg << "method inconclusive: epsilon_{" << m << "," << n << "} = " << eps.value << " >= 1/2";
    throw InconclusiveError(msg.str(), eps.value);
  }
  const GammaTable gammas = gamma_table(model, m + n, options.solver, options.numerics);
  const AlphaBeta ab = alpha_beta(eps.value);

  BoundCertificate cert;
  cert.model = model.name;
  cert.parameters = model.parameters;
  cert.model_source = model.source;
  cert.m = m;
  cert.n = n;
  cert.epsilon_mn = eps.value;
  cert.epsilon_provenance = eps.provenance;
  cert.m_max = eps.m_max;
  cert.rigorous = eps.rigorous;
  cert.gamma_mn = gammas.gamma_N;
  cert.gamma_excerpt = gammas.entries;
  cert.alpha = ab.alpha;
  cert.beta = ab.beta;
  cert.bound = bound_from(gammas.gamma_N, eps.value);
  cert.shift_applied = model.interaction.shift_applied;
  cert.tol_ker = options.numerics.kernel.tol_ker;
  cert.tol_unit = options.numerics.tol_unit;
  cert.lanczos_tol = options.numerics.kernel.lanczos.tol;
  cert.cap_dense = options.numerics.caps.dense;
  cert.gap_solver = to_string(options.solver);
  cert.timestamp = options.timestamp;

  if (cert.bound > cert.gamma_mn || cert.bound <= 0.0) {
    throw VerificationError("bound_certificate: bound is not in (0, gamma_{m+n}]");
  }
  return cert;
}

double certificate_self_consistency(const BoundCertificate& cert) {
  const AlphaBeta ab = alpha_beta(cert.epsilon_mn);
  double worst = 0.0;
  worst = std::max(worst, std::abs(ab.alpha - cert.alpha));
  worst = std::max(worst, std::abs(ab.beta - cert.beta));
  worst = std::max(worst, std::abs(bound_from(cert.gamma_mn, cert.epsilon_mn) - cert.bound));
  double running = std::numeric_limits<double>::infinity();
  for (const auto& e : cert.gamma_excerpt) running = std::min(running, e.gamma);
  if (!cert.gamma_excerpt.empty()) worst = std::max(worst, std::abs(running - cert.gamma_mn));
  return worst;
}

}  // namespace ffgap
