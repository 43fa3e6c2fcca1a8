#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/numerics.hpp"

namespace ffgap {

namespace {

struct Constraint {
  std::vector<ComplexVector> vectors;

  // Two passes of classical Gram-Schmidt; fixed order keeps the result
  // reproducible.
  void project_out(ComplexVector& v) const {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : vectors) v -= q * q.dot(v);
    }
  }
};

struct LowestPair {
  double value = 0.0;
  ComplexVector vector;
  double residual = 0.0;
};

ComplexVector start_vector(std::size_t dim, const Constraint& constraint, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    ComplexVector v = seeded_random_vector(dim, seed + 7919 * attempt);
    constraint.project_out(v);
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
  throw ConvergenceError("lanczos: could not build a start vector outside the deflation space", 0.0);
}

// Lowest eigenpair of P A P on the complement of `constraint`, where P is the
// complement projector. `available` is the complement dimension.
LowestPair lowest_in_complement(const LinearOperator& a, const Constraint& constraint,
                                std::size_t available, const LanczosOptions& options,
                                std::uint64_t seed) {
  const std::size_t dim = a.dim;
  ComplexVector v = start_vector(dim, constraint, seed);
  ComplexVector w(static_cast<Eigen::Index>(dim));
  double worst = 0.0;
  std::uint64_t injections = 0;

  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    const std::size_t max_steps = std::min(options.max_krylov, available);
    std::vector<ComplexVector> krylov;
    std::vector<double> alpha;
    std::vector<double> beta;
    krylov.push_back(v);

    double theta = 0.0;
    Eigen::VectorXd ritz;
    bool invariant = false;

    for (std::size_t j = 0; j < max_steps; ++j) {
      a.apply(krylov[j], w);
      constraint.project_out(w);
      const double a_j = krylov[j].dot(w).real();
      alpha.push_back(a_j);
      // Full reorthogonalization against every stored Krylov vector.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : krylov) w -= q * q.dot(w);
      }
      constraint.project_out(w);
      const double b_j = w.norm();

      const std::size_t m = alpha.size();
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(m));
      Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
      for (std::size_t i = 0; i + 1 < m; ++i) sub(static_cast<Eigen::Index>(i)) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()(0);
      ritz = tri.eigenvectors().col(0);
      const double estimate = b_j * std::abs(ritz(static_cast<Eigen::Index>(m - 1)));

      const double scale = std::max(1.0, std::abs(theta));
      invariant = m == available;
      if (invariant || j + 1 == max_steps) break;
      if (b_j <= 1e-13 * std::max(1.0, std::abs(a_j))) {
        // The Krylov space is invariant but not the whole complement: its
        // lowest Ritz value says nothing about the rest, so continue with a
        // fresh direction (zero coupling in the tridiagonal matrix).
        ComplexVector fresh = seeded_random_vector(dim, seed + 104729 * (++injections));
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& q : krylov) fresh -= q * q.dot(fresh);
          constraint.project_out(fresh);
        }
        const double norm = fresh.norm();
        if (norm <= 1e-8) {
          invariant = true;
          break;
        }
        beta.push_back(0.0);
        krylov.push_back(fresh / norm);
        continue;
      }
      if (estimate <= 0.1 * options.tol * scale) break;
      beta.push_back(b_j);
      krylov.push_back(w / b_j);
    }

    ComplexVector x = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < static_cast<std::size_t>(ritz.size()); ++i) {
      x += krylov[i] * ritz(static_cast<Eigen::Index>(i));
    }
    constraint.project_out(x);
    x.normalize();

    // Residual measured on the actual vector, not the Krylov estimate.
    a.apply(x, w);
    constraint.project_out(w);
    const double rayleigh = x.dot(w).real();
    const double residual = (w - rayleigh * x).norm();
    worst = residual;
    if (residual <= options.tol * std::max(1.0, std::abs(rayleigh)) || invariant) {
      return LowestPair{rayleigh, x, residual};
    }
    v = x;
  }
  std::ostringstream msg;
  msg << "lanczos: no convergence after " << options.max_restarts << " restarts (residual "
      << worst << ")";
  throw ConvergenceError(msg.str(), worst);
}

}  // namespace

LanczosResult lanczos_lowest(const LinearOperator& a, std::size_t k,
                             const OrthonormalBasis* deflate, const LanczosOptions& options) {
  if (k == 0) throw ValidationError("lanczos_lowest: k must be at least 1");
  if (a.dim == 0) throw ValidationError("lanczos_lowest: empty operator");
  Constraint constraint;
  if (deflate != nullptr) {
    if (deflate->ambient_dim() != a.dim) {
      throw ValidationError("lanczos_lowest: deflation basis has the wrong ambient dimension");
    }
    for (Eigen::Index c = 0; c < deflate->vectors().cols(); ++c) {
      constraint.vectors.emplace_back(deflate->vectors().col(c));
    }
  }

  LanczosResult result;
  std::vector<LowestPair> found;
  for (std::size_t i = 0; i < k; ++i) {
    if (constraint.vectors.size() >= a.dim) {
      result.exhausted = true;
      break;
    }
    const std::size_t available = a.dim - constraint.vectors.size();
    // The seed moves with the deflation count so a start vector never
    // repeats the Krylov space that produced the previous deflation vector.
    LowestPair pair = lowest_in_complement(a, constraint, available, options,
                                           options.seed + 31 * constraint.vectors.size() + i);
    constraint.vectors.push_back(pair.vector);
    found.push_back(std::move(pair));
  }

  std::sort(found.begin(), found.end(),
            [](const LowestPair& x, const LowestPair& y) { return x.value < y.value; });
  const auto n = static_cast<Eigen::Index>(found.size());
  result.pairs.eigenvalues.resize(n);
  result.pairs.residuals.resize(n);
  result.pairs.eigenvectors.resize(static_cast<Eigen::Index>(a.dim), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.pairs.eigenvalues(i) = found[static_cast<std::size_t>(i)].value;
    result.pairs.residuals(i) = found[static_cast<std::size_t>(i)].residual;
    result.pairs.eigenvectors.col(i) = found[static_cast<std::size_t>(i)].vector;
  }
  return result;
}

LanczosResult lanczos_lowest(const SparseHermitian& a, std::size_t k,
                             const OrthonormalBasis* deflate, const LanczosOptions& options) {
  return lanczos_lowest(LinearOperator::from(a), k, deflate, options);
}

OrthonormalBasis kernel_basis(const SparseHermitian& a, const KernelOptions& options) {
  if (a.dim() <= options.cap_dense) return kernel_basis(a.to_dense(), options);

  const double tol = options.tol_ker.value_or(default_kernel_tol(a.norm_estimate()));
  const LinearOperator op = LinearOperator::from(a);
  OrthonormalBasis found = OrthonormalBasis::empty(a.dim(), "kernel");
  while (found.size() < a.dim()) {
    const LanczosResult next = lanczos_lowest(op, 1, &found, options.lanczos);
    if (next.pairs.eigenvalues.size() == 0) break;
    const double value = next.pairs.eigenvalues(0);
    if (value < -tol) {
      std::ostringstream msg;
      msg << "kernel_basis: operator is not positive semidefinite (eigenvalue " << value << ")";
      throw ValidationError(msg.str());
    }
    if (value > tol) {
      if (value <= 10.0 * tol && !options.allow_ambiguous) {
        std::ostringstream msg;
        msg << "kernel_basis: eigenvalue " << value << " lies in the ambiguity band (" << tol
            << ", " << 10.0 * tol << "]";
        throw NumericalAmbiguityError(msg.str());
      }
      break;
    }
    found = found.joined(OrthonormalBasis(a.dim(), next.pairs.eigenvectors, "kernel"));
  }
  return found;
}

}  // namespace ffgap
