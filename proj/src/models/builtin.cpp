#include <cmath>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/models.hpp"

namespace ffgap {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix heisenberg_exchange(const SpinRep& spin) {
  return kron(spin.sz, spin.sz) +
         0.5 * (kron(spin.splus, spin.sminus) + kron(spin.sminus, spin.splus));
}

}  // namespace

double XXZParams::q() const { return std::exp(-xi); }

LocalInteraction xxz_interaction(const XXZParams& params, bool certification) {
  if (!std::isfinite(params.xi) || params.xi < 0.0 || (certification && params.xi <= 0.0)) {
    std::ostringstream msg;
    msg << "xxz_interaction: anisotropy xi must be " << (certification ? "> 0" : ">= 0")
        << " (got " << params.xi << ")";
    throw ValidationError(msg.str());
  }
  if (params.j != 0.5) {
    throw ValidationError("xxz_interaction: boundary field coefficient j is fixed to 1/2");
  }
  const SpinRep spin = spin_operators(1);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double sech = 1.0 / std::cosh(params.xi);
  const double tanh = std::tanh(params.xi);

  LocalInteraction h;
  h.d = 2;
  h.shift_applied = 0.25;
  h.matrix = -sech * heisenberg_exchange(spin) - (1.0 - sech) * kron(spin.sz, spin.sz) +
             params.j * tanh * (kron(spin.sz, id) - kron(id, spin.sz)) +
             h.shift_applied * ComplexMatrix::Identity(4, 4);
  return h;
}

LocalInteraction aklt_interaction() {
  const SpinRep spin = spin_operators(2);
  const ComplexMatrix ss = heisenberg_exchange(spin);
  LocalInteraction h;
  h.d = 3;
  h.shift_applied = 0.0;
  h.matrix = (1.0 / 3.0) * ComplexMatrix::Identity(9, 9) + 0.5 * ss + (1.0 / 6.0) * ss * ss;
  return h;
}

ModelSpec xxz_model(double xi, bool certification) {
  ModelSpec model;
  model.name = "xxz";
  model.kind = ModelKind::xxz;
  model.two_s = 1;
  model.interaction = xxz_interaction(XXZParams{xi, 0.5}, certification);
  model.conserves_sz = true;
  model.parameters = {{"xi", xi}};
  // The ground space of H(1,L) is the maximal (L+1)-dimensional multiplet.
  model.ground_degeneracy = [](int length) { return static_cast<std::size_t>(length + 1); };
  return model;
}

ModelSpec aklt_model() {
  ModelSpec model;
  model.name = "aklt";
  model.kind = ModelKind::aklt;
  model.two_s = 2;
  model.interaction = aklt_interaction();
  model.conserves_sz = true;
  model.ground_degeneracy = [](int length) { return std::size_t{length == 1 ? 3u : 4u}; };
  return model;
}

ModelSpec resolve_model(const std::string& selector, double xi, bool certification) {
  if (selector == "xxz") return xxz_model(xi, certification);
  if (selector == "aklt") return aklt_model();
  const std::string prefix = "custom:";
  if (selector.rfind(prefix, 0) == 0 && selector.size() > prefix.size()) {
    return load_custom(selector.substr(prefix.size()));
  }
  throw ValidationError("unknown model selector '" + selector +
                        "' (expected xxz, aklt, or custom:<path>)");
}

}  // namespace ffgap
