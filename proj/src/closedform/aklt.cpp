#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffgap/closedform.hpp"

namespace ffgap {

std::array<ComplexVector, 4> kt_ground_states() {
  const double r = std::sqrt(2.0);
  const double norm = 1.0 / std::sqrt(3.0);
  std::array<ComplexVector, 4> out;
  // basis order (|+⟩, |0⟩, |−⟩)
  out[0] = ComplexVector(3);
  out[0] << r, 1.0, 0.0;
  out[1] = ComplexVector(3);
  out[1] << -r, 1.0, 0.0;
  out[2] = ComplexVector(3);
  out[2] << 0.0, 1.0, r;
  out[3] = ComplexVector(3);
  out[3] << 0.0, 1.0, -r;
  for (auto& v : out) v *= norm;
  return out;
}

double minus_third_power(int k) {
  if (k < 0) throw ValidationError("minus_third_power: negative exponent");
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= -1.0 / 3.0;
  return out;
}

namespace {

double third_power(int k) { return std::abs(minus_third_power(k)); }

}  // namespace

namespace {

Eigen::Matrix4d gram_pattern(double sign) {
  Eigen::Matrix4d pattern;
  pattern << 0, sign, 1, 1,
             sign, 0, 1, 1,
             1, 1, 0, sign,
             1, 1, sign, 0;
  return pattern;
}

}  // namespace

Eigen::Matrix4d aklt_gram_matrix(int N) {
  if (N < 1) throw ValidationError("aklt_gram_matrix: N must be at least 1");
  const double sign = (N % 2 == 0) ? 1.0 : -1.0;
  return Eigen::Matrix4d::Identity() + third_power(N) * gram_pattern(sign);
}

AKLTGram aklt_gram(int N) {
  if (N < 2) {
    throw ValidationError("aklt_gram: M(1) is singular, the inverse exists for N >= 2 only");
  }
  const double sign = (N % 2 == 0) ? 1.0 : -1.0;
  const double t = third_power(N);
  Eigen::Matrix4d inverse_pattern = gram_pattern(sign);
  inverse_pattern.diagonal().setConstant(-2.0 * sign);

  AKLTGram g;
  g.N = N;
  g.M = aklt_gram_matrix(N);
  const double prefactor = 1.0 / (1.0 + 2.0 * sign * t - 3.0 * t * t);
  g.W = prefactor * (Eigen::Matrix4d::Identity() - t * inverse_pattern);

  const double defect = (g.M * g.W - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    std::ostringstream msg;
    msg << "aklt_gram(" << N << "): ||MW - I||_max = " << defect;
    throw VerificationError(msg.str());
  }
  return g;
}

ProductBasisProjector aklt_projector_product_basis(int a, int b, bool verify) {
  if (b < a) throw ValidationError("aklt_projector_product_basis: requires a <= b");
  const int sites = b - a + 1;
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(3, sites, DimensionCaps{}.dense));

  const auto phi = kt_ground_states();
  ComplexMatrix states(dim, 4);
  for (int k = 0; k < 4; ++k) {
    ComplexVector v = ComplexVector::Ones(1);
    for (int s = 0; s < sites; ++s) {
      ComplexVector next(v.size() * 3);
      for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(3 * i, 3) = v(i) * phi[k];
      v = std::move(next);
    }
    states.col(k) = v;
  }

  ProductBasisProjector out;
  out.a = a;
  out.b = b;
  if (sites == 1) {
    out.matrix = ComplexMatrix::Identity(dim, dim);  // G(a,a) = 1
  } else {
    out.matrix = states * aklt_gram(sites).W.cast<Complex>() * states.adjoint();
  }
  out.idempotence_defect = max_abs(out.matrix * out.matrix - out.matrix);
  out.hermiticity_defect = hermitian_defect(out.matrix);
  out.trace = out.matrix.trace().real();
  if (verify) {
    const OrthonormalBasis span = OrthonormalBasis::orthonormalize(states);
    out.reference_defect = max_abs(out.matrix - span.vectors() * span.vectors().adjoint());
  }
  if (out.idempotence_defect > 1e-9) {
    std::ostringstream msg;
    msg << "aklt_projector_product_basis(" << a << "," << b
        << "): idempotence defect " << out.idempotence_defect;
    throw VerificationError(msg.str());
  }
  return out;
}

Matrix16 aklt_A_matrix(int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("aklt_A_matrix: m and n must be at least 1");
  // Interval lengths: [0,n] has n+1 sites, [-m,0] has m+1, [0,0] one,
  // [1,n] n, [-m,-1] m.
  const Eigen::Matrix4d w_right = aklt_gram(n + 1).W;
  const Eigen::Matrix4d w_left = aklt_gram(m + 1).W;
  const Eigen::Matrix4d m_site = aklt_gram_matrix(1);
  const Eigen::Matrix4d m_right = aklt_gram_matrix(n);
  const Eigen::Matrix4d m_left = aklt_gram_matrix(m);

  Matrix16 A = Matrix16::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 4; ++k) {
          double sum = 0.0;
          for (int l = 0; l < 4; ++l) {
            const double left = w_right(k, l) * m_site(l, i) * m_right(l, j);
            for (int s = 0; s < 4; ++s) {
              sum += left * w_left(r, s) * m_site(s, k) * m_left(s, i);
            }
          }
          A(4 * i + j, 4 * r + k) = sum;
        }
      }
    }
  }
  return A;
}

Eigen::VectorXd aklt_A_spectrum(int m, int n) {
  Eigen::EigenSolver<Matrix16> solver(aklt_A_matrix(m, n), false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("aklt_A_spectrum: eigensolver failed", 0.0);
  }
  const auto values = solver.eigenvalues();
  const double imag = values.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-8) {
    std::ostringstream msg;
    msg << "aklt_A_spectrum(" << m << "," << n << "): complex eigenvalue, |Im| = " << imag;
    throw VerificationError(msg.str());
  }
  Eigen::VectorXd out = values.real();
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

namespace {

// The λ formulas in terms of x = (-1/3)^m, y = (-1/3)^n.
AKLTSpectrum lambda_xy(double x, double y) {
  const double den = 9.0 * (1.0 + x / 3.0) * (1.0 + y / 3.0);
  const double xy9 = x * y / 9.0;
  AKLTSpectrum s;
  s.lambda5 = (1.0 - x) * (1.0 - y) / den;
  s.lambda1 = (1.0 + 3.0 * x) * (1.0 + 3.0 * y) / den;
  s.R = (x - y) * (x - y) - 128.0 * xy9 * xy9 + 4.0 * xy9 * (1.0 + x) * (1.0 + y);
  if (s.R < -1e-12) {
    std::ostringstream msg;
    msg << "aklt_lambda: R = " << s.R << " is negative";
    throw VerificationError(msg.str());
  }
  const double root = 2.0 * std::sqrt(std::max(0.0, s.R));
  const double base = 1.0 + x + y - 19.0 * xy9;
  s.lambda3_plus = (base + root) / den;
  s.lambda3_minus = (base - root) / den;
  s.epsilon = std::max({s.lambda5, s.lambda1, s.lambda3_plus, s.lambda3_minus});
  return s;
}

}  // namespace

AKLTSpectrum aklt_lambda(int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("aklt_lambda: m and n must be at least 1");
  AKLTSpectrum s = lambda_xy(minus_third_power(m), minus_third_power(n));
  s.m = m;
  s.n = n;
  return s;
}

AKLTSup aklt_epsilon_sup(int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("aklt_epsilon_sup: m and n must be at least 1");
  constexpr int scan = 60;
  AKLTSup out;
  out.value = -1.0;
  out.scanned_to = m + scan;
  for (int mp = m; mp <= out.scanned_to; ++mp) {
    const double e = aklt_lambda(mp, n).epsilon;
    if (e > out.value) {
      out.value = e;
      out.argmax_m = mp;
    }
  }
  // Beyond the scan |x| <= 3^{-(m+61)}; the formulas are smooth in x there,
  // so the endpoints and x = 0 bound them up to second order, covered by the
  // margin.
  const double t = third_power(out.scanned_to + 1);
  const double y = minus_third_power(n);
  out.tail_bound = std::max({lambda_xy(-t, y).epsilon, lambda_xy(0.0, y).epsilon,
                             lambda_xy(t, y).epsilon}) + 1e-14;
  if (out.tail_bound > out.value) {
    out.value = out.tail_bound;
    out.argmax_m = -1;
  }
  return out;
}

}  // namespace ffgap
