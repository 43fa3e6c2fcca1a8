#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffgap/errors.hpp"
#include "ffgap/model_spec.hpp"
#include "ffgap/numerics.hpp"
#include "ffgap/spinchain.hpp"

namespace ffgap {

/// Numerical knobs shared by the certification pipeline.
struct SolverOptions {
  KernelOptions kernel;
  DimensionCaps caps;
  double tol_unit = 1e-8;    // K eigenvalues >= 1 - tol_unit count as 1
  double unit_guard = 1e-3;  // required separation below the unit band
  std::size_t theorem_dense_cap = 1024;
};

/// G(c,d): orthogonal projector onto Ker H(c,d), tensored with the identity
/// on the rest of the ambient chain. The kernel is stored on the support
/// alone; vectors of the ambient space are indexed (left, support, right)
/// with the leftmost site slowest.
class GroundProjector {
 public:
  GroundProjector(SiteInterval support, SiteInterval ambient, int d, ComplexMatrix local_basis);

  const SiteInterval& support() const { return m_support; }
  const SiteInterval& ambient() const { return m_ambient; }
  const ComplexMatrix& local_basis() const { return m_local; }

  std::size_t local_degeneracy() const { return static_cast<std::size_t>(m_local.cols()); }
  /// dim of the range in the ambient space.
  std::size_t degeneracy() const { return local_degeneracy() * m_left * m_right; }
  std::size_t ambient_dim() const { return m_left * m_mid * m_right; }

  ComplexVector apply(const ComplexVector& v) const;
  ComplexMatrix apply(const ComplexMatrix& columns) const;

  /// Orthonormal basis of the range, columns ordered (left, kernel, right).
  OrthonormalBasis embedded() const;

 private:
  SiteInterval m_support;
  SiteInterval m_ambient;
  ComplexMatrix m_local;
  std::size_t m_left = 1;
  std::size_t m_mid = 1;
  std::size_t m_right = 1;
};

/// A one-site support gives the identity projector.
GroundProjector ground_projector(const ModelSpec& model, const SiteInterval& support,
                                 const SiteInterval& ambient, const SolverOptions& options = {});

/// Extra sites appended around [-m, n] when forming K.
struct AmbientPadding {
  int left = 0;
  int right = 0;
};

struct KOperator {
  int m = 0;
  int n = 0;
  SiteInterval ambient;
  ComplexMatrix matrix;  // K = G(-m,0) G(0,n) G(-m,0) on an orthonormal basis of range G(-m,0)
  std::size_t left_degeneracy = 0;
};

KOperator k_operator(const ModelSpec& model, int m, int n, const SolverOptions& options = {},
                     AmbientPadding padding = {});

struct EpsilonResult {
  int m = 0;
  int n = 0;
  double epsilon = 0.0;
  std::size_t unit_multiplicity = 0;
  std::size_t ground_dim = 0;  // dim G(-m,n), computed from H(-m,n)
  std::vector<double> spectrum;  // descending
  std::size_t ambient_dim = 0;
  std::size_t k_dim = 0;
};

/// ε(m,n): the largest eigenvalue of K below the unit band. The number of
/// unit eigenvalues is checked against dim Ker H(-m,n).
EpsilonResult epsilon(const ModelSpec& model, int m, int n, const SolverOptions& options = {},
                      AmbientPadding padding = {});

enum class EpsilonProvenance { closed_form, computed_sup, single_value };

std::string to_string(EpsilonProvenance p);
EpsilonProvenance provenance_from_string(const std::string& s);

struct EpsilonSup {
  double value = 0.0;
  EpsilonProvenance provenance = EpsilonProvenance::single_value;
  int m_max = 0;       // last m' scanned (computed path)
  int argmax_m = 0;
  bool rigorous = false;  // false when the tail m' > m_max is not controlled
  std::string note;
};

/// ε_{m,n} = sup_{m' >= m} ε(m',n). Closed forms are used where registered
/// (XXZ with n = 1, AKLT); otherwise the maximum over m <= m' <= m_max.
EpsilonSup epsilon_sup(const ModelSpec& model, int m, int n, int m_max,
                       const SolverOptions& options = {});

enum class GapSolver { automatic, dense, sector_lanczos, lanczos };

std::string to_string(GapSolver s);
GapSolver gap_solver_from_string(const std::string& s);

struct GammaEntry {
  int n = 0;
  double gamma = 0.0;
  std::size_t kernel_dim = 0;
  std::string solver;
};

struct GammaTable {
  int N = 0;
  std::vector<GammaEntry> entries;  // n = 2..N
  double gamma_N = 0.0;            // running minimum
};

/// γ(1,n): smallest eigenvalue of H(1,n) above its kernel.
GammaEntry interval_gap(const ModelSpec& model, int n, GapSolver solver,
                        const SolverOptions& options = {});

GammaTable gamma_table(const ModelSpec& model, int N, GapSolver solver = GapSolver::automatic,
                       const SolverOptions& options = {});

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

/// α = (√(1-ε) - √ε)², β = √(1-ε)(√(1-ε) - √ε). Requires 0 <= ε < 1/2.
AlphaBeta alpha_beta(double eps);

struct BoundCertificate {
  std::string model;
  std::map<std::string, double> parameters;
  std::string model_source;
  int m = 0;
  int n = 0;
  double epsilon_mn = 0.0;
  EpsilonProvenance epsilon_provenance = EpsilonProvenance::single_value;
  int m_max = 0;
  bool rigorous = false;
  double gamma_mn = 0.0;  // γ_{m+n}
  std::vector<GammaEntry> gamma_excerpt;
  double alpha = 0.0;
  double beta = 0.0;
  double bound = 0.0;
  double shift_applied = 0.0;
  std::optional<double> tol_ker;  // empty: norm-relative default
  double tol_unit = 0.0;
  double lanczos_tol = 0.0;
  std::size_t cap_dense = 0;
  std::string gap_solver;
  std::string timestamp;
};

struct BoundOptions {
  int m_max = 8;
  GapSolver solver = GapSolver::automatic;
  std::string timestamp;
  SolverOptions numerics;
};

/// γ_{m+n} (1 - 2√(ε_{m,n}(1 - ε_{m,n}))). Requires 1 <= m <= n; throws
/// InconclusiveError when ε_{m,n} >= 1/2.
BoundCertificate bound_certificate(const ModelSpec& model, int m, int n,
                                   const BoundOptions& options = {});

/// Recomputes α, β and the bound from the stored ε and γ; returns the
/// largest discrepancy.
double certificate_self_consistency(const BoundCertificate& cert);

struct TheoremReport {
  int m = 0;
  int n = 0;
  int N = 0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double min_eigenvalue = 0.0;
  std::size_t complement_dim = 0;
  std::string method;
  bool passed = false;
};

/// Smallest eigenvalue of H(1,N) - γ_{m+n}(α(1 - P) + β(P - G)) on
/// range(1 - G), with P = G(1, N-n) and G = G(1, N).
TheoremReport verify_theorem_inequality(const ModelSpec& model, int m, int n, int N,
                                        const BoundOptions& options = {});

struct LemmaReport {
  std::size_t trials = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::size_t violations_a = 0;
  std::size_t violations_b = 0;
  double worst_margin_a = 0.0;  // min over trials of rhs-side slack (>= 0 means holds)
  double worst_margin_b = 0.0;
  std::optional<std::string> counterexample;  // JSON
  bool passed() const { return violations_a == 0 && violations_b == 0; }
};

/// Random-instance check of the two Cauchy-Schwarz estimates:
///  (a) ⟨ψ,Hψ⟩ >= γ |⟨ψ,(1-G)φ⟩|² / ⟨φ,(1-G)φ⟩ for H >= 0 with gap γ;
///  (b) |⟨ψ,Gφ⟩|² <= ‖ψ‖²‖φ‖² ⟨G⟩_φ (1 - ⟨G⟩_φ) for ψ ⊥ φ.
LemmaReport verify_lemma_cs(std::size_t trials, std::size_t dim, std::uint64_t seed,
                            double slack = 1e-10);

}  // namespace ffgap
