#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ffgap/errors.hpp"
#include "ffgap/model_spec.hpp"
#include "ffgap/numerics.hpp"

namespace ffgap {

/// Spin-s matrices in the S3 eigenbasis ordered m = s, s-1, ..., -s.
struct SpinRep {
  int two_s = 1;
  int d = 2;
  ComplexMatrix sz;
  ComplexMatrix splus;
  ComplexMatrix sminus;

  double spin() const { return 0.5 * two_s; }
};

/// Throws ValidationError for two_s < 1.
SpinRep spin_operators(int two_s);

/// Closed interval of sites [a, b].
struct SiteInterval {
  int a = 1;
  int b = 1;

  SiteInterval() = default;
  SiteInterval(int first, int last);

  int length() const { return b - a + 1; }
  bool contains(int site) const { return site >= a && site <= b; }
  bool contains(const SiteInterval& other) const { return other.a >= a && other.b <= b; }
  bool operator==(const SiteInterval&) const = default;
};

struct DimensionCaps {
  std::size_t dense = 4096;
  std::size_t sector = 2'000'000;
  std::size_t full = std::size_t{1} << 22;
};

/// d^sites, throwing ValidationError when it exceeds `cap`.
std::size_t hilbert_dim(int d, int sites, std::size_t cap);

/// I ⊗ h ⊗ I acting on bond (x, x+1) of `ambient`; leftmost site slowest.
SparseHermitian embed_two_site(const LocalInteraction& h, int bond, const SiteInterval& ambient,
                               const DimensionCaps& caps = {});

/// Single-site Hermitian operator embedded at `site`.
SparseHermitian embed_one_site(const ComplexMatrix& op, int site, const SiteInterval& ambient,
                               const DimensionCaps& caps = {});

/// Σ_x S3_x over the ambient interval.
SparseHermitian total_sz(int two_s, const SiteInterval& ambient, const DimensionCaps& caps = {});

struct ChainHamiltonian {
  std::string model;
  SiteInterval ambient;
  SiteInterval support;
  SparseHermitian matrix;
};

/// H(support) = Σ h(x, x+1) over bonds inside `support`, as an operator on
/// the ambient chain. A one-site support yields the zero operator.
ChainHamiltonian assemble(const ModelSpec& model, const SiteInterval& support,
                          const SiteInterval& ambient, const DimensionCaps& caps = {});

/// Product-basis states sharing a total magnetization.
struct SzSectorIndex {
  int two_sz = 0;                   // 2 × total S3
  std::vector<std::size_t> states;  // ascending
};

/// Partition of the d^sites product basis by total S3, largest
/// magnetization first.
std::vector<SzSectorIndex> sz_partition(int two_s, int sites);

/// ‖[H(1,3), S3_tot]‖_max for the model's interaction.
double sz_commutator_defect(const LocalInteraction& h, int two_s);

/// Sectors for `ambient`. Throws ValidationError when the model does not
/// declare S3 conservation or fails the numerical check on three sites.
std::vector<SzSectorIndex> sz_sectors(const ModelSpec& model, const SiteInterval& ambient,
                                      const DimensionCaps& caps = {});

/// Restriction of `h` to a sector (dense / sparse).
ComplexMatrix sector_block(const SparseHermitian& h, const SzSectorIndex& sector);
SparseHermitian sector_block_sparse(const SparseHermitian& h, const SzSectorIndex& sector);

/// ‖AB - BA‖_max.
double commutator_defect(const SparseHermitian& a, const SparseHermitian& b);

/// Kernel of a sector-conserving Hermitian operator, computed block by block
/// and embedded back into the full space. tol_ker defaults to the full
/// operator's norm-based threshold.
OrthonormalBasis kernel_by_sectors(const SparseHermitian& h,
                                   const std::vector<SzSectorIndex>& sectors,
                                   const KernelOptions& options = {});

/// Ker H(1, sites) on its own space, using the sector path when the model
/// conserves S3.
OrthonormalBasis interval_kernel(const ModelSpec& model, int sites,
                                 const KernelOptions& options = {},
                                 const DimensionCaps& caps = {});

struct FrustrationFreeReport {
  struct Level {
    int length = 0;
    std::size_t ground_degeneracy = 0;  // dim Ker H(1, L)
    std::size_t intersection_dim = 0;   // dim ∩_bonds Ker h(x, x+1)
  };
  double min_local_eigenvalue = 0.0;
  std::vector<Level> levels;
};

class FrustrationFreeError : public ValidationError {
 public:
  FrustrationFreeError(const std::string& what, int failing_length)
      : ValidationError(what), m_failing_length(failing_length) {}
  int failing_length() const { return m_failing_length; }

 private:
  int m_failing_length;
};

/// For L = 2..l_max: h ⪰ 0, dim Ker H(1,L) > 0, and Ker H(1,L) equal in
/// dimension to the bondwise kernel intersection (computed by successive
/// restriction, independently of H). Throws FrustrationFreeError.
FrustrationFreeReport check_frustration_free(const ModelSpec& model, int l_max,
                                             const DimensionCaps& caps = {});

}  // namespace ffgap
