#include <cmath>
#include <limits>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/spinchain.hpp"

namespace ffgap {

SpinRep spin_operators(int two_s) {
  if (two_s < 1) {
    throw ValidationError("spin_operators: spin must be at least 1/2");
  }
  SpinRep rep;
  rep.two_s = two_s;
  rep.d = two_s + 1;
  const double s = 0.5 * two_s;
  rep.sz = ComplexMatrix::Zero(rep.d, rep.d);
  rep.splus = ComplexMatrix::Zero(rep.d, rep.d);
  for (int k = 0; k < rep.d; ++k) {
    const double m = s - k;
    rep.sz(k, k) = m;
    // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1.
    if (k > 0) rep.splus(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  rep.sminus = rep.splus.adjoint();
  return rep;
}

SiteInterval::SiteInterval(int first, int last) : a(first), b(last) {
  if (first > last) {
    std::ostringstream msg;
    msg << "SiteInterval: [" << first << "," << last << "] is empty";
    throw ValidationError(msg.str());
  }
}

std::size_t hilbert_dim(int d, int sites, std::size_t cap) {
  if (d < 1 || sites < 0) throw ValidationError("hilbert_dim: invalid arguments");
  std::size_t dim = 1;
  for (int i = 0; i < sites; ++i) {
    if (dim > cap / static_cast<std::size_t>(d)) {
      std::ostringstream msg;
      msg << "dimension " << d << "^" << sites << " exceeds the configured cap " << cap;
      throw ValidationError(msg.str());
    }
    dim *= static_cast<std::size_t>(d);
  }
  if (dim > cap) {
    std::ostringstream msg;
    msg << "dimension " << dim << " exceeds the configured cap " << cap;
    throw ValidationError(msg.str());
  }
  return dim;
}

std::vector<SzSectorIndex> sz_partition(int two_s, int sites) {
  const int d = two_s + 1;
  const std::size_t dim = hilbert_dim(d, sites, std::numeric_limits<std::size_t>::max() / 2);
  const int top = two_s * sites;
  // Index by (top - two_sz) / 2, which runs over 0..two_s*sites.
  std::vector<SzSectorIndex> sectors(static_cast<std::size_t>(two_s * sites + 1));
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    sectors[i].two_sz = top - 2 * static_cast<int>(i);
  }
  for (std::size_t state = 0; state < dim; ++state) {
    std::size_t rest = state;
    int lowered = 0;  // Σ k over sites, where digit k means m = s - k
    for (int site = 0; site < sites; ++site) {
      lowered += static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    sectors[static_cast<std::size_t>(lowered)].states.push_back(state);
  }
  return sectors;
}

double sz_commutator_defect(const LocalInteraction& h, int two_s) {
  ModelSpec probe;
  probe.two_s = two_s;
  probe.interaction = h;
  const SiteInterval chain(1, 3);
  const ChainHamiltonian ham = assemble(probe, chain, chain);
  return commutator_defect(ham.matrix, total_sz(two_s, chain));
}

}  // namespace ffgap
