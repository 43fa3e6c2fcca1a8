#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/spinchain.hpp"

namespace ffgap {

namespace {

// ∩_x Ker h(x, x+1) by successive restriction: V <- V · Ker(V† h_x V).
std::size_t bondwise_intersection_dim(const ModelSpec& model, int length,
                                      const DimensionCaps& caps) {
  const SiteInterval chain(1, length);
  const std::size_t dim = hilbert_dim(model.local_dim(), length, caps.dense);
  ComplexMatrix v = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (int x = chain.a; x < chain.b && v.cols() > 0; ++x) {
    const ComplexMatrix hx = embed_two_site(model.interaction, x, chain, caps).to_dense();
    ComplexMatrix restricted = v.adjoint() * hx * v;
    restricted = 0.5 * (restricted + restricted.adjoint()).eval();
    const OrthonormalBasis k = kernel_basis(restricted);
    v = v * k.vectors();
  }
  return static_cast<std::size_t>(v.cols());
}

}  // namespace

FrustrationFreeReport check_frustration_free(const ModelSpec& model, int l_max,
                                             const DimensionCaps& caps) {
  if (l_max < 2) throw ValidationError("check_frustration_free: l_max must be at least 2");
  FrustrationFreeReport report;

  const RealVector local = hermitian_eigenvalues(model.interaction.matrix);
  report.min_local_eigenvalue = local(0);
  if (local(0) < -1e-12) {
    std::ostringstream msg;
    msg << "model '" << model.name << "' rejected: interaction is not positive (min eigenvalue "
        << local(0) << ")";
    throw FrustrationFreeError(msg.str(), 2);
  }

  for (int length = 2; length <= l_max; ++length) {
    FrustrationFreeReport::Level level;
    level.length = length;
    KernelOptions dense_only;
    dense_only.cap_dense = caps.dense;
    level.ground_degeneracy = interval_kernel(model, length, dense_only, caps).size();
    if (level.ground_degeneracy == 0) {
      std::ostringstream msg;
      msg << "model '" << model.name << "' rejected: H(1," << length << ") has trivial kernel";
      throw FrustrationFreeError(msg.str(), length);
    }
    level.intersection_dim = bondwise_intersection_dim(model, length, caps);
    if (level.intersection_dim != level.ground_degeneracy) {
      std::ostringstream msg;
      msg << "model '" << model.name << "' rejected at L=" << length << ": dim Ker H = "
          << level.ground_degeneracy << " but bondwise kernel intersection has dimension "
          << level.intersection_dim;
      throw FrustrationFreeError(msg.str(), length);
    }
    report.levels.push_back(level);
  }
  return report;
}

}  // namespace ffgap
