#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffgap/martingale.hpp"
#include "ffgap/numerics.hpp"

namespace ffgap {

// ---- XXZ kink chain -------------------------------------------------------

/// ε(m,1) = e^{-2ξ}/(1+e^{-2ξ}) · (1-e^{-2mξ})/(1-e^{-2(m+1)ξ}).
double xxz_epsilon_closed(double xi, int m);

/// m → ∞ limit e^{-2ξ}/(1+e^{-2ξ}); equals ε_{m,1} for every m.
double xxz_epsilon_limit(double xi);

class XXZEpsilonFormula {
 public:
  explicit XXZEpsilonFormula(double xi);
  double xi() const { return m_xi; }
  double operator()(int m);
  double limit() const { return xxz_epsilon_limit(m_xi); }

 private:
  double m_xi;
  std::map<int, double> m_cache;
};

// ---- AKLT via the Kennedy-Tasaki product states ----------------------------

/// φ_{1,2} = (|0⟩ ± √2|+⟩)/√3, φ_{3,4} = (|0⟩ ± √2|−⟩)/√3 in the spin-1
/// basis ordered (|+⟩, |0⟩, |−⟩).
std::array<ComplexVector, 4> kt_ground_states();

/// (-1/3)^k by repeated multiplication.
double minus_third_power(int k);

struct AKLTGram {
  int N = 0;
  Eigen::Matrix4d M;  // Gram matrix of the four product states on N sites
  Eigen::Matrix4d W;  // its inverse
};

/// M alone, valid for N >= 1. At N = 1 it is singular (four vectors in a
/// three-dimensional space).
Eigen::Matrix4d aklt_gram_matrix(int N);

/// Both matrices from their closed forms, N >= 2; throws VerificationError
/// when ‖MW - I‖_max > 1e-12.
AKLTGram aklt_gram(int N);

struct ProductBasisProjector {
  int a = 0;
  int b = 0;
  ComplexMatrix matrix;  // 3^L × 3^L
  double idempotence_defect = 0.0;
  double hermiticity_defect = 0.0;
  double trace = 0.0;
  std::optional<double> reference_defect;  // vs orthonormalized span of Φ_k
};

/// G(a,b) = Σ_ij Φ_i W_ij Φ_j†, and the identity when a = b. In verification mode it is also compared
/// entrywise with the projector onto span{Φ_k(a,b)} built by
/// orthonormalization. Throws VerificationError on an idempotence defect
/// above 1e-9.
ProductBasisProjector aklt_projector_product_basis(int a, int b, bool verify = true);

using Matrix16 = Eigen::Matrix<double, 16, 16>;

/// The 16×16 matrix of K(-m,n) in the basis Θ_ij = Φ_i(-m,0) ⊗ Φ_j(1,n);
/// row index 4i + j, column index 4r + k.
Matrix16 aklt_A_matrix(int m, int n);

/// Eigenvalues of aklt_A_matrix, descending. The matrix is not symmetric
/// (non-orthogonal basis) but its spectrum is real.
Eigen::VectorXd aklt_A_spectrum(int m, int n);

struct AKLTSpectrum {
  int m = 0;
  int n = 0;
  double lambda5 = 0.0;
  double lambda1 = 0.0;
  double lambda3_plus = 0.0;
  double lambda3_minus = 0.0;
  double R = 0.0;
  double epsilon = 0.0;  // max of the four
};

AKLTSpectrum aklt_lambda(int m, int n);

struct AKLTSup {
  double value = 0.0;
  int argmax_m = 0;
  int scanned_to = 0;
  double tail_bound = 0.0;  // upper bound on ε(m',n) for m' > scanned_to
};

/// sup_{m' >= m} ε(m', n) from the λ formulas: exact scan up to m + 60 and a
/// bound for the remaining tail, where |(-1/3)^{m'}| <= 3^{-(m+61)}.
AKLTSup aklt_epsilon_sup(int m, int n);

// ---- Cross-validation ------------------------------------------------------

struct CrossValidationReport {
  std::string name;
  std::vector<std::pair<std::string, double>> values;
  double max_disagreement = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  std::string describe() const;
};

/// Brute-force ε(m,n) on the AKLT chain, fifth eigenvalue of the 16×16
/// matrix, and the λ formulas; agreement within 2e-9.
CrossValidationReport cross_validate_aklt(int m, int n, const SolverOptions& options = {});

/// Brute-force ε(m,1) on the XXZ chain against the closed form, within 1e-10.
CrossValidationReport cross_validate_xxz(double xi, int m, const SolverOptions& options = {});

// ---- Sweeps ----------------------------------------------------------------

struct SweepRow {
  std::string model;
  std::optional<double> xi;
  int m = 0;
  int n = 0;
  std::optional<double> epsilon_closed;
  std::optional<double> epsilon_numeric;
  std::optional<double> gamma;
  std::optional<double> bound;
  std::string status = "ok";
};

/// %.17g; empty optionals print as empty fields.
std::string format_double(double x);

/// Header: model,xi,m,n,epsilon_closed,epsilon_numeric,gamma,bound,status
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// ξ = xi_min, xi_min + step, ... <= xi_max (+1e-9 slack); empty if xi_min > xi_max.
std::vector<double> xi_grid(double xi_min, double xi_max, double step);

std::vector<SweepRow> sweep_xxz(const std::vector<double>& xis, int m, int n,
                                const BoundOptions& options = {});

std::vector<SweepRow> sweep_aklt(int m_max, int n_max, const BoundOptions& options = {});

}  // namespace ffgap
