#include <sstream>

#include "ffgap/martingale.hpp"

namespace ffgap {

namespace {

std::size_t power(int d, int k) {
  std::size_t out = 1;
  for (int i = 0; i < k; ++i) out *= static_cast<std::size_t>(d);
  return out;
}

}  // namespace

GroundProjector::GroundProjector(SiteInterval support, SiteInterval ambient, int d,
                                 ComplexMatrix local_basis)
    : m_support(support), m_ambient(ambient), m_local(std::move(local_basis)) {
  if (!ambient.contains(support)) {
    throw ValidationError("GroundProjector: support is not inside the ambient interval");
  }
  m_left = power(d, support.a - ambient.a);
  m_mid = power(d, support.length());
  m_right = power(d, ambient.b - support.b);
  if (static_cast<std::size_t>(m_local.rows()) != m_mid) {
    throw ValidationError("GroundProjector: local basis has the wrong dimension");
  }
}

ComplexVector GroundProjector::apply(const ComplexVector& v) const {
  ComplexMatrix single = v;
  return apply(single).col(0);
}

ComplexMatrix GroundProjector::apply(const ComplexMatrix& columns) const {
  if (static_cast<std::size_t>(columns.rows()) != ambient_dim()) {
    throw ValidationError("GroundProjector::apply: dimension mismatch");
  }
  ComplexMatrix out(columns.rows(), columns.cols());
  const auto mid = static_cast<Eigen::Index>(m_mid);
  const auto right = static_cast<Eigen::Index>(m_right);
  // P^T = conj(L) L^T with L the kernel basis; never form the mid × mid
  // projector itself.
  const ComplexMatrix left_factor = m_local.conjugate();
  const ComplexMatrix right_factor = m_local.transpose();
  ComplexMatrix reduced;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    for (std::size_t l = 0; l < m_left; ++l) {
      const Eigen::Index offset = static_cast<Eigen::Index>(l) * mid * right;
      // Entry (r, s) of this block sits at s * right + r.
      Eigen::Map<const ComplexMatrix> in(columns.col(c).data() + offset, right, mid);
      Eigen::Map<ComplexMatrix> res(out.col(c).data() + offset, right, mid);
      reduced.noalias() = in * left_factor;
      res.noalias() = reduced * right_factor;
    }
  }
  return out;
}

OrthonormalBasis GroundProjector::embedded() const {
  const auto dim = static_cast<Eigen::Index>(ambient_dim());
  const auto g = static_cast<Eigen::Index>(local_degeneracy());
  ComplexMatrix v = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(degeneracy()));
  Eigen::Index col = 0;
  for (std::size_t l = 0; l < m_left; ++l) {
    for (Eigen::Index j = 0; j < g; ++j) {
      for (std::size_t r = 0; r < m_right; ++r) {
        for (std::size_t s = 0; s < m_mid; ++s) {
          v(static_cast<Eigen::Index>((l * m_mid + s) * m_right + r), col) =
              m_local(static_cast<Eigen::Index>(s), j);
        }
        ++col;
      }
    }
  }
  std::ostringstream tag;
  tag << "G(" << m_support.a << "," << m_support.b << ")";
  return OrthonormalBasis(static_cast<std::size_t>(dim), std::move(v), tag.str());
}

GroundProjector ground_projector(const ModelSpec& model, const SiteInterval& support,
                                 const SiteInterval& ambient, const SolverOptions& options) {
  if (!ambient.contains(support)) {
    throw ValidationError("ground_projector: support is not inside the ambient interval");
  }
  hilbert_dim(model.local_dim(), ambient.length(), options.caps.full);
  const OrthonormalBasis local =
      interval_kernel(model, support.length(), options.kernel, options.caps);
  return GroundProjector(support, ambient, model.local_dim(), local.vectors());
}

KOperator k_operator(const ModelSpec& model, int m, int n, const SolverOptions& options,
                     AmbientPadding padding) {
  if (m < 1 || n < 1) throw ValidationError("k_operator: m and n must be at least 1");
  if (padding.left < 0 || padding.right < 0) throw ValidationError("k_operator: negative padding");
  const SiteInterval ambient(-m - padding.left, n + padding.right);
  hilbert_dim(model.local_dim(), ambient.length(), options.caps.full);

  const GroundProjector left = ground_projector(model, SiteInterval(-m, 0), ambient, options);
  const GroundProjector right = ground_projector(model, SiteInterval(0, n), ambient, options);

  const OrthonormalBasis v = left.embedded();
  const ComplexMatrix pv = right.apply(v.vectors());
  ComplexMatrix k = v.vectors().adjoint() * pv;
  k = 0.5 * (k + k.adjoint()).eval();

  KOperator out;
  out.m = m;
  out.n = n;
  out.ambient = ambient;
  out.matrix = std::move(k);
  out.left_degeneracy = left.degeneracy();
  return out;
}

}  // namespace ffgap
