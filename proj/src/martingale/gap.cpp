#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ffgap/martingale.hpp"

namespace ffgap {

std::string to_string(GapSolver s) {
  switch (s) {
    case GapSolver::automatic:
      return "auto";
    case GapSolver::dense:
      return "dense";
    case GapSolver::sector_lanczos:
      return "sector-lanczos";
    case GapSolver::lanczos:
      return "lanczos";
  }
  return "unknown";
}

GapSolver gap_solver_from_string(const std::string& s) {
  if (s == "auto") return GapSolver::automatic;
  if (s == "dense") return GapSolver::dense;
  if (s == "sector-lanczos") return GapSolver::sector_lanczos;
  if (s == "lanczos") return GapSolver::lanczos;
  throw ValidationError("unknown gap solver '" + s + "' (auto, dense, sector-lanczos, lanczos)");
}

namespace {

struct BlockGap {
  std::size_t kernel_dim = 0;
  double gap = std::numeric_limits<double>::infinity();
};

// Kernel by repeated deflated Lanczos, then the lowest level above it.
BlockGap lanczos_block_gap(const SparseHermitian& block, double tol, const SolverOptions& options) {
  KernelOptions kernel = options.kernel;
  kernel.tol_ker = tol;
  kernel.cap_dense = 0;
  const OrthonormalBasis ker = kernel_basis(block, kernel);
  BlockGap out;
  out.kernel_dim = ker.size();
  if (ker.size() < block.dim()) {
    const LanczosResult next = lanczos_lowest(block, 1, &ker, options.kernel.lanczos);
    if (next.pairs.eigenvalues.size() > 0) out.gap = next.pairs.eigenvalues(0);
  }
  return out;
}

void raise_on_ambiguity(double value, double tol, int n) {
  if (value <= 10.0 * tol) {
    std::ostringstream msg;
    msg << "gap of H(1," << n << "): eigenvalue " << value << " lies in the kernel ambiguity band";
    throw NumericalAmbiguityError(msg.str());
  }
}

}  // namespace

GammaEntry interval_gap(const ModelSpec& model, int n, GapSolver solver,
                        const SolverOptions& options) {
  if (n < 2) throw ValidationError("interval_gap: the gap is defined for intervals of length >= 2");
  const SiteInterval chain(1, n);
  const ChainHamiltonian ham = assemble(model, chain, chain, options.caps);
  const SparseHermitian& h = ham.matrix;
  const double tol = options.kernel.tol_ker.value_or(default_kernel_tol(h.norm_estimate()));

  if (solver == GapSolver::automatic) {
    if (model.conserves_sz) {
      solver = GapSolver::sector_lanczos;
    } else {
      solver = h.dim() <= options.caps.dense ? GapSolver::dense : GapSolver::lanczos;
    }
  }

  GammaEntry entry;
  entry.n = n;
  entry.solver = to_string(solver);
  double gap = std::numeric_limits<double>::infinity();

  switch (solver) {
    case GapSolver::dense: {
      if (h.dim() > options.caps.dense) {
        std::ostringstream msg;
        msg << "interval_gap: dimension " << h.dim() << " exceeds the dense cap " << options.caps.dense;
        throw ValidationError(msg.str());
      }
      const RealVector values = hermitian_eigenvalues(h.to_dense());
      if (values(0) < -tol) throw ValidationError("interval_gap: H is not positive semidefinite");
      Eigen::Index k = 0;
      while (k < values.size() && values(k) <= tol) ++k;
      entry.kernel_dim = static_cast<std::size_t>(k);
      if (k < values.size()) gap = values(k);
      break;
    }
    case GapSolver::sector_lanczos: {
      for (const auto& sector : sz_sectors(model, chain, options.caps)) {
        const BlockGap block = lanczos_block_gap(sector_block_sparse(h, sector), tol, options);
        entry.kernel_dim += block.kernel_dim;
        gap = std::min(gap, block.gap);
      }
      break;
    }
    case GapSolver::lanczos: {
      const BlockGap block = lanczos_block_gap(h, tol, options);
      entry.kernel_dim = block.kernel_dim;
      gap = block.gap;
      break;
    }
    case GapSolver::automatic:
      break;
  }

  if (!std::isfinite(gap)) {
    std::ostringstream msg;
    msg << "interval_gap: H(1," << n << ") has no spectrum above its kernel";
    throw VerificationError(msg.str());
  }
  raise_on_ambiguity(gap, tol, n);
  if (entry.kernel_dim == 0) {
    std::ostringstream msg;
    msg << "interval_gap: H(1," << n << ") has trivial kernel; model is not frustration free";
    throw VerificationError(msg.str());
  }
  if (model.ground_degeneracy && model.ground_degeneracy(n) != entry.kernel_dim) {
    std::ostringstream msg;
    msg << "interval_gap: kernel of H(1," << n << ") has dimension " << entry.kernel_dim
        << ", model declares " << model.ground_degeneracy(n);
    throw VerificationError(msg.str());
  }
  entry.gamma = gap;
  return entry;
}

GammaTable gamma_table(const ModelSpec& model, int N, GapSolver solver,
                       const SolverOptions& options) {
  if (N < 2) throw ValidationError("gamma_table: N must be at least 2");
  GammaTable table;
  table.N = N;
  table.gamma_N = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= N; ++n) {
    GammaEntry entry = interval_gap(model, n, solver, options);
    table.gamma_N = std::min(table.gamma_N, entry.gamma);
    table.entries.push_back(std::move(entry));
  }
  return table;
}

}  // namespace ffgap
