#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/numerics.hpp"

namespace ffgap {

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermitian_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ValidationError("hermitian_defect: matrix is not square");
  }
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a) {
  return a.rows() == a.cols() && hermitian_defect(a) <= 1e-12 * std::max(1.0, max_abs(a));
}

OrthonormalBasis::OrthonormalBasis(std::size_t ambient_dim, ComplexMatrix vectors,
                                   std::string span_tag)
    : m_ambient_dim(ambient_dim), m_vectors(std::move(vectors)), m_span_tag(std::move(span_tag)) {
  if (static_cast<std::size_t>(m_vectors.rows()) != m_ambient_dim) {
    if (m_vectors.cols() == 0) {
      m_vectors.resize(static_cast<Eigen::Index>(m_ambient_dim), 0);
    } else {
      throw ValidationError("OrthonormalBasis: vector length does not match ambient dimension");
    }
  }
  const double defect = orthonormality_defect();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "OrthonormalBasis '" << m_span_tag << "': columns not orthonormal (defect " << defect
        << ")";
    throw ValidationError(msg.str());
  }
}

OrthonormalBasis OrthonormalBasis::empty(std::size_t ambient_dim, std::string span_tag) {
  return OrthonormalBasis(ambient_dim, ComplexMatrix(static_cast<Eigen::Index>(ambient_dim), 0),
                          std::move(span_tag));
}

OrthonormalBasis OrthonormalBasis::orthonormalize(const ComplexMatrix& vectors, double drop_tol,
                                                  std::string span_tag) {
  std::vector<ComplexVector> kept;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    ComplexVector v = vectors.col(c);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) v -= q * q.dot(v);
    }
    const double remaining = v.norm();
    if (remaining <= drop_tol * std::max(1.0, original)) continue;
    kept.push_back(v / remaining);
  }
  ComplexMatrix out(vectors.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = kept[i];
  return OrthonormalBasis(static_cast<std::size_t>(vectors.rows()), std::move(out),
                          std::move(span_tag));
}

OrthonormalBasis OrthonormalBasis::joined(const OrthonormalBasis& other) const {
  if (other.m_ambient_dim != m_ambient_dim) {
    throw ValidationError("OrthonormalBasis::joined: ambient dimensions differ");
  }
  ComplexMatrix both(static_cast<Eigen::Index>(m_ambient_dim), m_vectors.cols() + other.m_vectors.cols());
  both << m_vectors, other.m_vectors;
  return OrthonormalBasis(m_ambient_dim, std::move(both), m_span_tag);
}

double OrthonormalBasis::orthonormality_defect() const {
  if (m_vectors.cols() == 0) return 0.0;
  const ComplexMatrix gram = m_vectors.adjoint() * m_vectors;
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

namespace {

bool purely_real(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j).imag() != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

SpectralDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw ValidationError("hermitian_eig: expected a non-empty square matrix");
  }
  const double scale = std::max(1.0, max_abs(a));
  const double defect = hermitian_defect(a);
  if (defect > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "hermitian_eig: matrix is not Hermitian (max asymmetry " << defect << ")";
    throw ValidationError(msg.str());
  }

  SpectralDecomposition out;
  if (purely_real(a)) {
    // Symmetric real input: the real solver is several times faster and
    // yields real eigenvectors.
    const Eigen::MatrixXd sym = a.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("hermitian_eig: real symmetric solver did not converge", 0.0);
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors().cast<Complex>();
    const Eigen::MatrixXd r = sym * solver.eigenvectors() -
                              solver.eigenvectors() * solver.eigenvalues().asDiagonal();
    out.residuals = r.colwise().norm().transpose();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("hermitian_eig: complex Hermitian solver did not converge", 0.0);
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    const ComplexMatrix r =
        a * out.eigenvectors - out.eigenvectors * out.eigenvalues.cast<Complex>().asDiagonal();
    out.residuals = r.colwise().norm().transpose();
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw ValidationError("hermitian_eigenvalues: expected a non-empty square matrix");
  }
  const double defect = hermitian_defect(a);
  if (defect > 1e-12 * std::max(1.0, max_abs(a))) {
    std::ostringstream msg;
    msg << "hermitian_eigenvalues: matrix is not Hermitian (max asymmetry " << defect << ")";
    throw ValidationError(msg.str());
  }
  if (purely_real(a)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.real(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("hermitian_eigenvalues: solver did not converge", 0.0);
    }
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_eigenvalues: solver did not converge", 0.0);
  }
  return solver.eigenvalues();
}

double default_kernel_tol(double norm_estimate) { return 1e-10 * (1.0 + norm_estimate); }

OrthonormalBasis kernel_basis(const ComplexMatrix& a, const KernelOptions& options) {
  const std::size_t dim = static_cast<std::size_t>(a.rows());
  if (dim == 0) return OrthonormalBasis::empty(0, "kernel");
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  const double tol = options.tol_ker.value_or(default_kernel_tol(norm));
  const SpectralDecomposition eig = hermitian_eig(a);

  if (eig.eigenvalues(0) < -tol) {
    std::ostringstream msg;
    msg << "kernel_basis: operator is not positive semidefinite (min eigenvalue "
        << eig.eigenvalues(0) << ")";
    throw ValidationError(msg.str());
  }
  Eigen::Index count = 0;
  while (count < eig.eigenvalues.size() && eig.eigenvalues(count) <= tol) ++count;
  if (count < eig.eigenvalues.size() && eig.eigenvalues(count) <= 10.0 * tol &&
      !options.allow_ambiguous) {
    std::ostringstream msg;
    msg << "kernel_basis: eigenvalue " << eig.eigenvalues(count)
        << " lies in the ambiguity band (" << tol << ", " << 10.0 * tol << "]";
    throw NumericalAmbiguityError(msg.str());
  }
  return OrthonormalBasis(dim, eig.eigenvectors.leftCols(count), "kernel");
}

ComplexVector project_onto(const OrthonormalBasis& basis, const ComplexVector& v) {
  if (static_cast<std::size_t>(v.size()) != basis.ambient_dim()) {
    throw ValidationError("project_onto: dimension mismatch");
  }
  if (basis.is_empty()) return ComplexVector::Zero(v.size());
  const ComplexVector coeffs = basis.vectors().adjoint() * v;
  return basis.vectors() * coeffs;
}

ComplexVector seeded_random_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  const double n = v.norm();
  return n > 0.0 ? ComplexVector(v / n) : v;
}

}  // namespace ffgap
