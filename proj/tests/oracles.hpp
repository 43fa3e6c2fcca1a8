#pragma once

// Reference computations for the tests. Everything here is built from dense
// Kronecker products and full-space projectors, independently of the
// library's sparse embedding, sector reduction and reduced K operator.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat eye(Eigen::Index n) { return Mat::Identity(n, n); }

inline Eigen::Index ipow(Eigen::Index base, int k) {
  Eigen::Index out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

struct Spin {
  Mat sz, sp, sm;
  Mat sx() const { return 0.5 * (sp + sm); }
  Mat sy() const { return std::complex<double>(0, -0.5) * (sp - sm); }
};

inline Spin spin_half() {
  Spin s;
  s.sz = Mat::Zero(2, 2);
  s.sz(0, 0) = 0.5;
  s.sz(1, 1) = -0.5;
  s.sp = Mat::Zero(2, 2);
  s.sp(0, 1) = 1.0;
  s.sm = s.sp.adjoint();
  return s;
}

inline Spin spin_one() {
  Spin s;
  s.sz = Mat::Zero(3, 3);
  s.sz(0, 0) = 1.0;
  s.sz(2, 2) = -1.0;
  s.sp = Mat::Zero(3, 3);
  s.sp(0, 1) = std::sqrt(2.0);
  s.sp(1, 2) = std::sqrt(2.0);
  s.sm = s.sp.adjoint();
  return s;
}

inline Mat dot(const Spin& s) {
  return kron(s.sz, s.sz) + 0.5 * (kron(s.sp, s.sm) + kron(s.sm, s.sp));
}

/// Kink XXZ bond with the +1/4 shift, from the displayed formula.
inline Mat xxz_bond(double xi) {
  const Spin s = spin_half();
  const double sech = 1.0 / std::cosh(xi);
  const double tanh = std::tanh(xi);
  return -sech * dot(s) - (1.0 - sech) * kron(s.sz, s.sz) +
         0.5 * tanh * (kron(s.sz, eye(2)) - kron(eye(2), s.sz)) + 0.25 * eye(4);
}

/// Spin-2 projector as the eigenprojector of S·S at eigenvalue 1
/// (total spin 2: (6 - 2 - 2)/2 = 1).
inline Mat aklt_bond() {
  const Mat ss = dot(spin_one());
  Eigen::SelfAdjointEigenSolver<Mat> eig(ss);
  Mat p = Mat::Zero(9, 9);
  for (Eigen::Index i = 0; i < 9; ++i) {
    if (std::abs(eig.eigenvalues()(i) - 1.0) < 1e-8) {
      p += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).adjoint();
    }
  }
  return p;
}

/// Sum of bond terms on `sites` sites, leftmost site slowest.
inline Mat chain(const Mat& bond, int d, int sites) {
  const Eigen::Index dim = ipow(d, sites);
  Mat h = Mat::Zero(dim, dim);
  for (int x = 0; x + 1 < sites; ++x) {
    h += kron(kron(eye(ipow(d, x)), bond), eye(ipow(d, sites - x - 2)));
  }
  return h;
}

inline RVec spectrum(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

/// Projector onto the eigenvectors with eigenvalue below tol.
inline Mat kernel_projector(const Mat& a, double tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a);
  Mat p = Mat::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (eig.eigenvalues()(i) < tol) p += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).adjoint();
  }
  return p;
}

inline std::size_t kernel_dim(const Mat& a, double tol = 1e-8) {
  const RVec ev = spectrum(a);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) k += ev(i) < tol ? 1 : 0;
  return k;
}

/// Smallest eigenvalue above the kernel.
inline double gap(const Mat& a, double tol = 1e-8) {
  const RVec ev = spectrum(a);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol) return ev(i);
  }
  return std::numeric_limits<double>::infinity();
}

/// ε(m,n) from K = G(-m,0) G(0,n) G(-m,0) formed on all m+n+1 sites.
inline double epsilon(const Mat& bond, int d, int m, int n) {
  const Mat left = kron(kernel_projector(chain(bond, d, m + 1)), eye(ipow(d, n)));
  const Mat right = kron(eye(ipow(d, m)), kernel_projector(chain(bond, d, n + 1)));
  Mat k = left * right * left;
  k = 0.5 * (k + k.adjoint()).eval();
  const RVec ev = spectrum(k);
  double best = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 1.0 - 1e-8) best = std::max(best, ev(i));
  }
  return best;
}

inline std::size_t unit_multiplicity(const Mat& bond, int d, int m, int n) {
  const Mat left = kron(kernel_projector(chain(bond, d, m + 1)), eye(ipow(d, n)));
  const Mat right = kron(eye(ipow(d, m)), kernel_projector(chain(bond, d, n + 1)));
  Mat k = left * right * left;
  k = 0.5 * (k + k.adjoint()).eval();
  const RVec ev = spectrum(k);
  std::size_t units = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) units += ev(i) >= 1.0 - 1e-8 ? 1 : 0;
  return units;
}

/// ε(m,1) for the kink chain, straight from the formula with pow.
inline double xxz_epsilon(double xi, int m) {
  const double q2 = std::exp(-2.0 * xi);
  return q2 / (1.0 + q2) * (1.0 - std::pow(q2, m)) / (1.0 - std::pow(q2, m + 1));
}

/// Laplacian of the path graph on `nodes` vertices.
inline Mat path_laplacian(int nodes) {
  Mat l = Mat::Zero(nodes, nodes);
  for (int i = 0; i + 1 < nodes; ++i) {
    l(i, i) += 1.0;
    l(i + 1, i + 1) += 1.0;
    l(i, i + 1) = -1.0;
    l(i + 1, i) = -1.0;
  }
  return l;
}

/// Gram matrix of the four product states, from their single-site vectors.
inline Eigen::Matrix4d gram(int sites) {
  const double r = std::sqrt(2.0);
  Eigen::Matrix<double, 3, 4> phi;
  phi.col(0) << r, 1, 0;
  phi.col(1) << -r, 1, 0;
  phi.col(2) << 0, 1, r;
  phi.col(3) << 0, 1, -r;
  phi /= std::sqrt(3.0);
  Eigen::Matrix4d g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = std::pow(phi.col(i).dot(phi.col(j)), sites);
  }
  return g;
}

inline double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace oracle
