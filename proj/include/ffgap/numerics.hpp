#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace ffgap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest absolute entry, ‖A‖_max.
double max_abs(const ComplexMatrix& a);

/// max_ij |A_ij - conj(A_ji)|. Requires a square matrix.
double hermitian_defect(const ComplexMatrix& a);

/// True when the defect is within 1e-12 * max(1, ‖A‖_max).
bool is_hermitian(const ComplexMatrix& a);

/// Hermitian matrix stored as its upper triangle (row <= col). A full CSR
/// copy is kept alongside for matrix-vector products.
class SparseHermitian {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
  };

  SparseHermitian() = default;

  /// Entries with row > col are folded onto their conjugate position;
  /// duplicates are summed.
  SparseHermitian(std::size_t dim, const std::vector<Entry>& entries);

  static SparseHermitian from_dense(const ComplexMatrix& a, double drop_tol = 0.0);
  static SparseHermitian zero(std::size_t dim) { return SparseHermitian(dim, {}); }

  std::size_t dim() const { return m_dim; }
  const std::vector<Entry>& upper() const { return m_upper; }
  const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& full() const { return m_full; }

  void apply(const ComplexVector& x, ComplexVector& y) const;
  ComplexMatrix to_dense() const;

  /// Infinity-norm; an upper bound on the spectral norm.
  double norm_estimate() const;

  SparseHermitian operator+(const SparseHermitian& other) const;
  SparseHermitian scaled(double factor) const;

 private:
  std::size_t m_dim = 0;
  std::vector<Entry> m_upper;
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> m_full;
};

/// Matrix-free Hermitian operator.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(const ComplexVector&, ComplexVector&)> apply;

  static LinearOperator from(const SparseHermitian& a);
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns
  RealVector residuals;       // ‖A v - λ v‖ per pair
};

/// Orthonormal columns spanning a named subspace. Construction checks
/// ‖V†V - I‖_max <= 1e-10.
class OrthonormalBasis {
 public:
  OrthonormalBasis() = default;
  OrthonormalBasis(std::size_t ambient_dim, ComplexMatrix vectors, std::string span_tag = {});

  static OrthonormalBasis empty(std::size_t ambient_dim, std::string span_tag = {});

  /// Orthonormalizes the columns of `vectors` (modified Gram-Schmidt, two
  /// passes), dropping columns whose remaining norm is below `drop_tol`.
  static OrthonormalBasis orthonormalize(const ComplexMatrix& vectors, double drop_tol = 1e-10,
                                         std::string span_tag = {});

  std::size_t ambient_dim() const { return m_ambient_dim; }
  std::size_t size() const { return static_cast<std::size_t>(m_vectors.cols()); }
  bool is_empty() const { return size() == 0; }
  const ComplexMatrix& vectors() const { return m_vectors; }
  const std::string& span_tag() const { return m_span_tag; }

  /// Column concatenation; the result is re-checked for orthonormality.
  OrthonormalBasis joined(const OrthonormalBasis& other) const;

  double orthonormality_defect() const;

 private:
  std::size_t m_ambient_dim = 0;
  ComplexMatrix m_vectors;
  std::string m_span_tag;
};

/// Full spectrum of a Hermitian matrix. Throws ValidationError if the input
/// is not Hermitian and ConvergenceError if the solver fails.
SpectralDecomposition hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues only (ascending).
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

struct LanczosOptions {
  double tol = 1e-10;  // residual tolerance, relative to max(1, |θ|)
  std::size_t max_krylov = 300;
  std::size_t max_restarts = 60;
  std::uint64_t seed = 20021209;
};

struct LanczosResult {
  SpectralDecomposition pairs;
  bool exhausted = false;  // fewer than k pairs exist in the complement
};

/// k lowest eigenpairs of `a` restricted to the orthogonal complement of
/// `deflate`. Full reorthogonalization against the Krylov vectors and the
/// deflation space at every step; degenerate levels are resolved by
/// deflating each converged vector and restarting.
LanczosResult lanczos_lowest(const LinearOperator& a, std::size_t k,
                             const OrthonormalBasis* deflate = nullptr,
                             const LanczosOptions& options = {});

LanczosResult lanczos_lowest(const SparseHermitian& a, std::size_t k,
                             const OrthonormalBasis* deflate = nullptr,
                             const LanczosOptions& options = {});

struct KernelOptions {
  std::optional<double> tol_ker;  // absolute; default 1e-10 * (1 + ‖A‖)
  bool allow_ambiguous = false;
  std::size_t cap_dense = 1024;
  LanczosOptions lanczos;
};

double default_kernel_tol(double norm_estimate);

/// Eigenvectors with eigenvalue <= tol_ker. An eigenvalue inside
/// (tol_ker, 10 tol_ker] raises NumericalAmbiguityError unless
/// allow_ambiguous is set; an eigenvalue below -tol_ker raises
/// ValidationError (not positive semidefinite).
OrthonormalBasis kernel_basis(const ComplexMatrix& a, const KernelOptions& options = {});

/// Dense when dim <= cap_dense, otherwise repeated deflated Lanczos.
OrthonormalBasis kernel_basis(const SparseHermitian& a, const KernelOptions& options = {});

/// V V† v. Throws ValidationError on dimension mismatch.
ComplexVector project_onto(const OrthonormalBasis& basis, const ComplexVector& v);

/// Deterministic unit vector with complex Gaussian entries.
ComplexVector seeded_random_vector(std::size_t dim, std::uint64_t seed);

}  // namespace ffgap
