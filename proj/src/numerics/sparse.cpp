#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffgap/errors.hpp"
#include "ffgap/numerics.hpp"

namespace ffgap {

SparseHermitian::SparseHermitian(std::size_t dim, const std::vector<Entry>& entries) : m_dim(dim) {
  std::vector<Entry> folded;
  folded.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw ValidationError("SparseHermitian: entry index out of range");
    }
    if (e.row <= e.col) {
      folded.push_back(e);
    } else {
      folded.push_back({e.col, e.row, std::conj(e.value)});
    }
  }
  std::stable_sort(folded.begin(), folded.end(), [](const Entry& x, const Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Complex>> merged;
  for (const auto& e : folded) {
    if (!merged.empty() && merged.back().first == std::make_pair(e.row, e.col)) {
      merged.back().second += e.value;
    } else {
      merged.push_back({{e.row, e.col}, e.value});
    }
  }

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(2 * merged.size());
  m_upper.reserve(merged.size());
  for (const auto& [key, value] : merged) {
    const auto [r, c] = key;
    if (value == Complex(0.0, 0.0)) continue;
    if (r == c && std::abs(value.imag()) > 1e-12) {
      std::ostringstream msg;
      msg << "SparseHermitian: diagonal entry (" << r << "," << r << ") has imaginary part "
          << value.imag();
      throw ValidationError(msg.str());
    }
    const Complex v = r == c ? Complex(value.real(), 0.0) : value;
    m_upper.push_back({r, c, v});
    triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
    if (r != c) triplets.emplace_back(static_cast<int>(c), static_cast<int>(r), std::conj(v));
  }
  m_full.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m_full.setFromTriplets(triplets.begin(), triplets.end());
  m_full.makeCompressed();
}

SparseHermitian SparseHermitian::from_dense(const ComplexMatrix& a, double drop_tol) {
  if (!is_hermitian(a)) {
    std::ostringstream msg;
    msg << "SparseHermitian::from_dense: matrix is not Hermitian (max asymmetry "
        << hermitian_defect(a) << ")";
    throw ValidationError(msg.str());
  }
  std::vector<Entry> entries;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r <= c; ++r) {
      if (std::abs(a(r, c)) > drop_tol) {
        entries.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), a(r, c)});
      }
    }
  }
  return SparseHermitian(static_cast<std::size_t>(a.rows()), entries);
}

void SparseHermitian::apply(const ComplexVector& x, ComplexVector& y) const {
  if (static_cast<std::size_t>(x.size()) != m_dim) {
    throw ValidationError("SparseHermitian::apply: dimension mismatch");
  }
  y.noalias() = m_full * x;
}

ComplexMatrix SparseHermitian::to_dense() const { return ComplexMatrix(m_full); }

double SparseHermitian::norm_estimate() const {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m_full.outerSize(); ++r) {
    double row = 0.0;
    for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(m_full, r); it; ++it) {
      row += std::abs(it.value());
    }
    best = std::max(best, row);
  }
  return best;
}

SparseHermitian SparseHermitian::operator+(const SparseHermitian& other) const {
  if (other.m_dim != m_dim) throw ValidationError("SparseHermitian::operator+: dimension mismatch");
  std::vector<Entry> all = m_upper;
  all.insert(all.end(), other.m_upper.begin(), other.m_upper.end());
  return SparseHermitian(m_dim, all);
}

SparseHermitian SparseHermitian::scaled(double factor) const {
  std::vector<Entry> all = m_upper;
  for (auto& e : all) e.value *= factor;
  return SparseHermitian(m_dim, all);
}

LinearOperator LinearOperator::from(const SparseHermitian& a) {
  return LinearOperator{a.dim(), [&a](const ComplexVector& x, ComplexVector& y) { a.apply(x, y); }};
}

}  // namespace ffgap
