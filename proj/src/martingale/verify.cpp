#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ffgap/martingale.hpp"
#include "json.hpp"

namespace ffgap {

TheoremReport verify_theorem_inequality(const ModelSpec& model, int m, int n, int N,
                                        const BoundOptions& options) {
  if (m < 1 || n < m) throw ValidationError("verify_theorem_inequality: requires 1 <= m <= n");
  if (N < 2) throw ValidationError("verify_theorem_inequality: N must be at least 2");
  const SolverOptions& numerics = options.numerics;

  const EpsilonSup eps = epsilon_sup(model, m, n, std::max(options.m_max, m), numerics);
  if (eps.value >= 0.5) {
    std::ostringstream msg;
    msg << "verify_theorem_inequality: epsilon_{" << m << "," << n << "} = " << eps.value
        << " >= 1/2";
    throw InconclusiveError(msg.str(), eps.value);
  }
  const double gamma = gamma_table(model, m + n, options.solver, numerics).gamma_N;
  const AlphaBeta ab = alpha_beta(eps.value);

  TheoremReport report;
  report.m = m;
  report.n = n;
  report.N = N;
  report.epsilon = eps.value;
  report.gamma = gamma;
  report.alpha = ab.alpha;
  report.beta = ab.beta;

  const SiteInterval chain(1, N);
  const ChainHamiltonian ham = assemble(model, chain, chain, numerics.caps);
  const GroundProjector ground = ground_projector(model, chain, chain, numerics);
  // G(1, N-n) is the identity when N - n <= 1 (then ψ1 = 0).
  const int left_end = std::max(1, N - n);
  const GroundProjector p = ground_projector(model, SiteInterval(1, left_end), chain, numerics);
  const OrthonormalBasis g = ground.embedded();
  const std::size_t dim = ham.matrix.dim();
  report.complement_dim = dim - g.size();
  if (report.complement_dim == 0) {
    report.method = "trivial";
    report.min_eigenvalue = 0.0;
    report.passed = true;
    return report;
  }

  // On range(1-G): M = H - γα + γ(α-β) P, since G vanishes there and M maps
  // range(G) to zero.
  const double ga = gamma * ab.alpha;
  const double gab = gamma * (ab.alpha - ab.beta);

  if (dim <= numerics.theorem_dense_cap) {
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix mat = ham.matrix.to_dense();
    mat += gab * p.apply(ComplexMatrix(ComplexMatrix::Identity(d, d)));
    mat -= ga * ComplexMatrix::Identity(d, d);
    // Lift range(G) far above the rest so the lowest eigenvalue belongs to
    // the complement.
    const double lift = 10.0 * (1.0 + ham.matrix.norm_estimate() + gamma);
    mat += lift * (g.vectors() * g.vectors().adjoint());
    mat = 0.5 * (mat + mat.adjoint()).eval();
    report.min_eigenvalue = hermitian_eigenvalues(mat)(0);
    report.method = "dense";
  } else {
    LinearOperator op;
    op.dim = dim;
    op.apply = [&](const ComplexVector& x, ComplexVector& y) {
      ham.matrix.apply(x, y);
      y -= ga * x;
      y += gab * p.apply(x);
    };
    const LanczosResult low = lanczos_lowest(op, 1, &g, numerics.kernel.lanczos);
    report.min_eigenvalue = low.pairs.eigenvalues(0);
    report.method = "lanczos";
  }
  report.passed = report.min_eigenvalue >= -1e-9;
  return report;
}

namespace {

using json = nlohmann::json;

ComplexVector random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t dim) {
  ComplexMatrix z(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index c = 0; c < z.cols(); ++c) z.col(c) = random_vector(rng, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  return qr.householderQ() * ComplexMatrix::Identity(z.rows(), z.cols());
}

json encode(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json encode(const ComplexMatrix& a) {
  json out = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

LemmaReport verify_lemma_cs(std::size_t trials, std::size_t dim, std::uint64_t seed, double slack) {
  if (dim < 2) throw ValidationError("verify_lemma_cs: dim must be at least 2");
  LemmaReport report;
  report.trials = trials;
  report.dim = dim;
  report.seed = seed;
  report.worst_margin_a = std::numeric_limits<double>::infinity();
  report.worst_margin_b = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> kernel_rank(1, dim - 1);
  std::uniform_int_distribution<std::size_t> proj_rank(0, dim);
  std::uniform_real_distribution<double> level(0.05, 3.0);
  std::bernoulli_distribution coin(0.25);
  const auto d = static_cast<Eigen::Index>(dim);

  for (std::size_t t = 0; t < trials; ++t) {
    // (a): H = U diag(0..0, λ..) U†, G the kernel projector, γ the gap.
    {
      const ComplexMatrix u = random_unitary(rng, dim);
      const auto k = static_cast<Eigen::Index>(kernel_rank(rng));
      RealVector spectrum = RealVector::Zero(d);
      for (Eigen::Index i = k; i < d; ++i) spectrum(i) = level(rng);
      const double gap = spectrum.tail(d - k).minCoeff();
      const ComplexMatrix h = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
      const ComplexMatrix g = u.leftCols(k) * u.leftCols(k).adjoint();
      const ComplexMatrix one_minus_g = ComplexMatrix::Identity(d, d) - g;

      const ComplexVector psi = random_vector(rng, dim);
      ComplexVector phi = random_vector(rng, dim);
      if (coin(rng)) phi = one_minus_g * phi;  // φ ⊥ Ker H exactly
      const double lhs = psi.dot(h * psi).real();
      const double denom = phi.dot(one_minus_g * phi).real();
      const double rhs = gap * std::norm(psi.dot(one_minus_g * phi)) / denom;
      const double margin = lhs - rhs;
      const double tol = slack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
      report.worst_margin_a = std::min(report.worst_margin_a, margin);
      if (margin < -tol) {
        ++report.violations_a;
        if (!report.counterexample) {
          json ce = {{"part", "a"}, {"trial", t}, {"H", encode(h)}, {"gap", gap},
                     {"psi", encode(psi)}, {"phi", encode(phi)}, {"lhs", lhs}, {"rhs", rhs}};
          report.counterexample = ce.dump();
        }
      }
    }
    // (b): random projector G, ψ ⊥ φ.
    {
      const ComplexMatrix u = random_unitary(rng, dim);
      const auto r = static_cast<Eigen::Index>(proj_rank(rng));
      const ComplexMatrix g = u.leftCols(r) * u.leftCols(r).adjoint();
      const ComplexVector phi = random_vector(rng, dim);
      ComplexVector psi = random_vector(rng, dim);
      psi -= phi * (phi.dot(psi) / phi.squaredNorm());

      const double expectation = phi.dot(g * phi).real() / phi.squaredNorm();
      const double lhs = std::norm(psi.dot(g * phi));
      const double rhs =
          psi.squaredNorm() * phi.squaredNorm() * expectation * (1.0 - expectation);
      const double margin = rhs - lhs;
      const double tol = slack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
      report.worst_margin_b = std::min(report.worst_margin_b, margin);
      if (margin < -tol) {
        ++report.violations_b;
        if (!report.counterexample) {
          json ce = {{"part", "b"}, {"trial", t}, {"G", encode(g)}, {"psi", encode(psi)},
                     {"phi", encode(phi)}, {"lhs", lhs}, {"rhs", rhs}};
          report.counterexample = ce.dump();
        }
      }
    }
  }
  return report;
}

}  // namespace ffgap
