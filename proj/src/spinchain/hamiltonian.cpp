#include <cmath>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/spinchain.hpp"

namespace ffgap {

namespace {

void append_bond(std::vector<SparseHermitian::Entry>& out, const LocalInteraction& h, int bond,
                 const SiteInterval& ambient) {
  if (!ambient.contains(bond) || !ambient.contains(bond + 1)) {
    std::ostringstream msg;
    msg << "embed_two_site: bond (" << bond << "," << bond + 1 << ") lies outside ["
        << ambient.a << "," << ambient.b << "]";
    throw ValidationError(msg.str());
  }
  const auto d = static_cast<std::size_t>(h.d);
  const auto pair_dim = d * d;
  if (static_cast<std::size_t>(h.matrix.rows()) != pair_dim ||
      static_cast<std::size_t>(h.matrix.cols()) != pair_dim) {
    throw ValidationError("embed_two_site: interaction is not d^2 x d^2");
  }
  const int offset = bond - ambient.a;
  std::size_t left = 1;
  for (int i = 0; i < offset; ++i) left *= d;
  std::size_t right = 1;
  for (int i = offset + 2; i < ambient.length(); ++i) right *= d;

  for (std::size_t j = 0; j < pair_dim; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const Complex value = h.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (value == Complex(0.0, 0.0)) continue;
      for (std::size_t l = 0; l < left; ++l) {
        const std::size_t row_base = (l * pair_dim + i) * right;
        const std::size_t col_base = (l * pair_dim + j) * right;
        for (std::size_t r = 0; r < right; ++r) {
          out.push_back({row_base + r, col_base + r, value});
        }
      }
    }
  }
}

}  // namespace

SparseHermitian embed_two_site(const LocalInteraction& h, int bond, const SiteInterval& ambient,
                               const DimensionCaps& caps) {
  const std::size_t dim = hilbert_dim(h.d, ambient.length(), caps.full);
  std::vector<SparseHermitian::Entry> entries;
  append_bond(entries, h, bond, ambient);
  return SparseHermitian(dim, entries);
}

SparseHermitian embed_one_site(const ComplexMatrix& op, int site, const SiteInterval& ambient,
                               const DimensionCaps& caps) {
  if (!ambient.contains(site)) throw ValidationError("embed_one_site: site outside ambient");
  if (!is_hermitian(op)) throw ValidationError("embed_one_site: operator is not Hermitian");
  const auto d = static_cast<std::size_t>(op.rows());
  const std::size_t dim = hilbert_dim(static_cast<int>(d), ambient.length(), caps.full);
  const int offset = site - ambient.a;
  std::size_t left = 1;
  for (int i = 0; i < offset; ++i) left *= d;
  const std::size_t right = dim / (left * d);
  std::vector<SparseHermitian::Entry> entries;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const Complex value = op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (value == Complex(0.0, 0.0)) continue;
      for (std::size_t l = 0; l < left; ++l) {
        for (std::size_t r = 0; r < right; ++r) {
          entries.push_back({(l * d + i) * right + r, (l * d + j) * right + r, value});
        }
      }
    }
  }
  return SparseHermitian(dim, entries);
}

SparseHermitian total_sz(int two_s, const SiteInterval& ambient, const DimensionCaps& caps) {
  const int d = two_s + 1;
  const std::size_t dim = hilbert_dim(d, ambient.length(), caps.full);
  std::vector<SparseHermitian::Entry> entries;
  entries.reserve(dim);
  for (std::size_t state = 0; state < dim; ++state) {
    std::size_t rest = state;
    int lowered = 0;
    for (int site = 0; site < ambient.length(); ++site) {
      lowered += static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    const double m = 0.5 * (two_s * ambient.length() - 2 * lowered);
    if (m != 0.0) entries.push_back({state, state, Complex(m, 0.0)});
  }
  return SparseHermitian(dim, entries);
}

ChainHamiltonian assemble(const ModelSpec& model, const SiteInterval& support,
                          const SiteInterval& ambient, const DimensionCaps& caps) {
  if (!ambient.contains(support)) {
    std::ostringstream msg;
    msg << "assemble: support [" << support.a << "," << support.b << "] not inside ambient ["
        << ambient.a << "," << ambient.b << "]";
    throw ValidationError(msg.str());
  }
  const std::size_t dim = hilbert_dim(model.local_dim(), ambient.length(), caps.full);
  std::vector<SparseHermitian::Entry> entries;
  for (int x = support.a; x < support.b; ++x) append_bond(entries, model.interaction, x, ambient);
  return ChainHamiltonian{model.name, ambient, support, SparseHermitian(dim, entries)};
}

std::vector<SzSectorIndex> sz_sectors(const ModelSpec& model, const SiteInterval& ambient,
                                      const DimensionCaps& caps) {
  if (!model.conserves_sz) {
    throw ValidationError("sz_sectors: model '" + model.name + "' does not declare S3 conservation");
  }
  const double defect = sz_commutator_defect(model.interaction, model.two_s);
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "sz_sectors: model '" << model.name << "' does not conserve total S3 (‖[H,S3]‖_max = "
        << defect << ")";
    throw ValidationError(msg.str());
  }
  hilbert_dim(model.local_dim(), ambient.length(), caps.full);
  auto sectors = sz_partition(model.two_s, ambient.length());
  for (const auto& s : sectors) {
    if (s.states.size() > caps.sector) {
      std::ostringstream msg;
      msg << "sz_sectors: sector dimension " << s.states.size() << " exceeds the cap "
          << caps.sector;
      throw ValidationError(msg.str());
    }
  }
  return sectors;
}

namespace {

std::vector<long> positions_of(const SparseHermitian& h, const SzSectorIndex& sector) {
  std::vector<long> where(h.dim(), -1);
  for (std::size_t i = 0; i < sector.states.size(); ++i) {
    if (sector.states[i] >= h.dim()) throw ValidationError("sector state index out of range");
    where[sector.states[i]] = static_cast<long>(i);
  }
  return where;
}

template <typename Visit>
void for_each_block_entry(const SparseHermitian& h, const SzSectorIndex& sector, Visit visit) {
  const std::vector<long> where = positions_of(h, sector);
  const auto& full = h.full();
  for (std::size_t i = 0; i < sector.states.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(sector.states[i]);
    for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(full, row); it; ++it) {
      const long j = where[static_cast<std::size_t>(it.col())];
      if (j < 0) {
        if (std::abs(it.value()) > 1e-12) {
          throw ValidationError("sector_block: operator couples different S3 sectors");
        }
        continue;
      }
      visit(i, static_cast<std::size_t>(j), it.value());
    }
  }
}

}  // namespace

ComplexMatrix sector_block(const SparseHermitian& h, const SzSectorIndex& sector) {
  const auto n = static_cast<Eigen::Index>(sector.states.size());
  ComplexMatrix block = ComplexMatrix::Zero(n, n);
  for_each_block_entry(h, sector, [&](std::size_t i, std::size_t j, Complex v) {
    block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
  });
  return block;
}

SparseHermitian sector_block_sparse(const SparseHermitian& h, const SzSectorIndex& sector) {
  std::vector<SparseHermitian::Entry> entries;
  for_each_block_entry(h, sector, [&](std::size_t i, std::size_t j, Complex v) {
    if (i <= j) entries.push_back({i, j, v});
  });
  return SparseHermitian(sector.states.size(), entries);
}

double commutator_defect(const SparseHermitian& a, const SparseHermitian& b) {
  if (a.dim() != b.dim()) throw ValidationError("commutator_defect: dimension mismatch");
  const Eigen::SparseMatrix<Complex, Eigen::RowMajor> c = a.full() * b.full() - b.full() * a.full();
  double worst = 0.0;
  for (Eigen::Index r = 0; r < c.outerSize(); ++r) {
    for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(c, r); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

OrthonormalBasis kernel_by_sectors(const SparseHermitian& h,
                                   const std::vector<SzSectorIndex>& sectors,
                                   const KernelOptions& options) {
  KernelOptions local = options;
  local.tol_ker = options.tol_ker.value_or(default_kernel_tol(h.norm_estimate()));

  std::vector<ComplexVector> columns;
  for (const auto& sector : sectors) {
    if (sector.states.empty()) continue;
    const OrthonormalBasis block_kernel = sector.states.size() <= options.cap_dense
                                              ? kernel_basis(sector_block(h, sector), local)
                                              : kernel_basis(sector_block_sparse(h, sector), local);
    for (Eigen::Index c = 0; c < block_kernel.vectors().cols(); ++c) {
      ComplexVector full = ComplexVector::Zero(static_cast<Eigen::Index>(h.dim()));
      for (std::size_t i = 0; i < sector.states.size(); ++i) {
        full(static_cast<Eigen::Index>(sector.states[i])) =
            block_kernel.vectors()(static_cast<Eigen::Index>(i), c);
      }
      columns.push_back(std::move(full));
    }
  }
  ComplexMatrix v(static_cast<Eigen::Index>(h.dim()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = columns[c];
  return OrthonormalBasis(h.dim(), std::move(v), "kernel");
}

OrthonormalBasis interval_kernel(const ModelSpec& model, int sites, const KernelOptions& options,
                                 const DimensionCaps& caps) {
  if (sites < 1) throw ValidationError("interval_kernel: need at least one site");
  const int d = model.local_dim();
  if (sites == 1) {
    return OrthonormalBasis(static_cast<std::size_t>(d), ComplexMatrix::Identity(d, d), "kernel");
  }
  const SiteInterval chain(1, sites);
  const ChainHamiltonian ham = assemble(model, chain, chain, caps);
  KernelOptions local = options;
  local.cap_dense = std::min(options.cap_dense, caps.dense);
  if (model.conserves_sz) {
    return kernel_by_sectors(ham.matrix, sz_sectors(model, chain, caps), local);
  }
  return kernel_basis(ham.matrix, local);
}

}  // namespace ffgap
