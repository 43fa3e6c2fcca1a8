#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ffgap/closedform.hpp"
#include "ffgap/martingale.hpp"

namespace ffgap {

EpsilonResult epsilon(const ModelSpec& model, int m, int n, const SolverOptions& options,
                      AmbientPadding padding) {
  const KOperator k = k_operator(model, m, n, options, padding);

  EpsilonResult out;
  out.m = m;
  out.n = n;
  out.ambient_dim = hilbert_dim(model.local_dim(), k.ambient.length(), options.caps.full);
  out.k_dim = static_cast<std::size_t>(k.matrix.rows());

  const RealVector ascending = hermitian_eigenvalues(k.matrix);
  out.spectrum.assign(ascending.data(), ascending.data() + ascending.size());
  std::reverse(out.spectrum.begin(), out.spectrum.end());

  if (out.spectrum.front() > 1.0 + 1e-10 || out.spectrum.back() < -1e-10) {
    std::ostringstream msg;
    msg << "epsilon(" << m << "," << n << "): K spectrum leaves [0,1] (range "
        << out.spectrum.back() << " .. " << out.spectrum.front() << ")";
    throw VerificationError(msg.str());
  }

  const double unit_floor = 1.0 - options.tol_unit;
  const double guard_floor = 1.0 - options.unit_guard;
  std::size_t units = 0;
  while (units < out.spectrum.size() && out.spectrum[units] >= unit_floor) ++units;
  out.unit_multiplicity = units;
  if (units < out.spectrum.size()) {
    const double next = out.spectrum[units];
    if (next > guard_floor) {
      std::ostringstream msg;
      msg << "epsilon(" << m << "," << n << "): eigenvalue " << next
          << " falls between the unit band and the separation guard (" << guard_floor
          << ", " << unit_floor << "); spectral crowding needs manual review";
      throw NumericalAmbiguityError(msg.str());
    }
    out.epsilon = std::max(0.0, next);
  }

  // The unit eigenspace must be exactly G(-m,n).
  const GroundProjector whole = ground_projector(model, SiteInterval(-m, n), k.ambient, options);
  out.ground_dim = whole.degeneracy();
  if (out.ground_dim != out.unit_multiplicity) {
    std::ostringstream msg;
    msg << "epsilon(" << m << "," << n << "): K has " << out.unit_multiplicity
        << " unit eigenvalues but dim G(-m,n) = " << out.ground_dim;
    throw VerificationError(msg.str());
  }
  return out;
}

std::string to_string(EpsilonProvenance p) {
  switch (p) {
    case EpsilonProvenance::closed_form:
      return "closed_form";
    case EpsilonProvenance::computed_sup:
      return "computed_sup";
    case EpsilonProvenance::single_value:
      return "single_value";
  }
  return "unknown";
}

EpsilonProvenance provenance_from_string(const std::string& s) {
  if (s == "closed_form") return EpsilonProvenance::closed_form;
  if (s == "computed_sup") return EpsilonProvenance::computed_sup;
  if (s == "single_value") return EpsilonProvenance::single_value;
  throw ValidationError("unknown epsilon provenance '" + s + "'");
}

EpsilonSup epsilon_sup(const ModelSpec& model, int m, int n, int m_max,
                       const SolverOptions& options) {
  if (m < 1 || n < 1) throw ValidationError("epsilon_sup: m and n must be at least 1");

  EpsilonSup out;
  if (model.kind == ModelKind::xxz && n == 1) {
    // ε(m',1) increases with m', so the supremum is the m' → ∞ limit.
    out.value = xxz_epsilon_limit(model.parameters.at("xi"));
    out.provenance = EpsilonProvenance::closed_form;
    out.rigorous = true;
    out.argmax_m = -1;
    out.note = "limit of the increasing closed form e^{-2xi}/(1+e^{-2xi})";
    return out;
  }
  if (model.kind == ModelKind::aklt) {
    const AKLTSup sup = aklt_epsilon_sup(m, n);
    out.value = sup.value;
    out.provenance = EpsilonProvenance::closed_form;
    out.rigorous = true;
    out.m_max = sup.scanned_to;
    out.argmax_m = sup.argmax_m;
    std::ostringstream note;
    note << "lambda formulas scanned to m'=" << sup.scanned_to << ", tail bound "
         << format_double(sup.tail_bound);
    out.note = note.str();
    return out;
  }

  if (m_max < m) throw ValidationError("epsilon_sup: m_max must be >= m");
  out.provenance = m_max == m ? EpsilonProvenance::single_value : EpsilonProvenance::computed_sup;
  out.rigorous = false;
  out.m_max = m_max;
  out.value = -1.0;
  for (int mp = m; mp <= m_max; ++mp) {
    const double value = epsilon(model, mp, n, options).epsilon;
    if (value > out.value) {
      out.value = value;
      out.argmax_m = mp;
    }
  }
  std::ostringstream note;
  note << "maximum over m' in [" << m << "," << m_max << "]; tail m' > " << m_max
       << " not controlled (empirical)";
  out.note = note.str();
  return out;
}

}  // namespace ffgap
