#include <catch_amalgamated.hpp>
#include <cmath>
#include <string>

#include "ffgap/certificate_io.hpp"
#include "ffgap/errors.hpp"
#include "ffgap/martingale.hpp"
#include "ffgap/models.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace ffgap;
using Catch::Matchers::WithinAbs;
using json = nlohmann::json;

TEST_CASE("ground projector: small examples", "[martingale][projector]") {
  const ModelSpec xxz = xxz_model(1.0);
  const SiteInterval ambient(1, 4);
  const GroundProjector one = ground_projector(xxz, SiteInterval(2, 2), ambient);
  CHECK(one.degeneracy() == 16);
  const ComplexVector v = seeded_random_vector(16, 1);
  CHECK(max_abs(one.apply(v) - v) <= 1e-15);

  const GroundProjector g = ground_projector(xxz, SiteInterval(2, 3), ambient);
  CHECK(g.local_degeneracy() == 3);
  CHECK(g.degeneracy() == 12);
  CHECK(g.ambient_dim() == 16);
  const ComplexMatrix dense = g.apply(ComplexMatrix(ComplexMatrix::Identity(16, 16)));
  const ComplexMatrix expected = oracle::kron(
      oracle::kron(oracle::eye(2), oracle::kernel_projector(oracle::xxz_bond(1.0))), oracle::eye(2));
  CHECK(max_abs(dense - expected) <= 1e-12);
  CHECK(max_abs(dense * dense - dense) <= 1e-12);
  const OrthonormalBasis range = g.embedded();
  CHECK(range.size() == 12);
  CHECK(max_abs(range.vectors() * range.vectors().adjoint() - dense) <= 1e-12);

  CHECK_THROWS_AS(ground_projector(xxz, SiteInterval(0, 2), ambient), ValidationError);
  CHECK_THROWS_AS(g.apply(ComplexVector(ComplexVector::Ones(8))), ValidationError);
}

TEST_CASE("ground projectors of nested intervals are ordered", "[martingale][projector][property]") {
  // G(a,b) G(c,d) = G(c,d) whenever [a,b] ⊂ [c,d].
  const ModelSpec aklt = aklt_model();
  const SiteInterval ambient(1, 5);
  const GroundProjector small = ground_projector(aklt, SiteInterval(2, 3), ambient);
  const GroundProjector big = ground_projector(aklt, SiteInterval(1, 4), ambient);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ComplexVector v = seeded_random_vector(243, seed);
    const ComplexVector bv = big.apply(v);
    CHECK(max_abs(small.apply(bv) - bv) <= 1e-12);
  }
}

TEST_CASE("epsilon: known values", "[martingale][epsilon]") {
  const EpsilonResult a11 = epsilon(aklt_model(), 1, 1);
  CHECK_THAT(a11.epsilon, WithinAbs(0.25, 1e-12));
  CHECK(a11.unit_multiplicity == 4);
  CHECK(a11.ground_dim == 4);
  CHECK(a11.spectrum.front() <= 1.0 + 1e-12);

  const EpsilonResult a33 = epsilon(aklt_model(), 3, 3);
  CHECK_THAT(a33.epsilon, WithinAbs(0.1225, 1e-10));

  const double xi = std::log(3.0) / 2.0;
  const EpsilonResult x11 = epsilon(xxz_model(xi), 1, 1);
  CHECK_THAT(x11.epsilon, WithinAbs(3.0 / 16.0, 1e-12));
  CHECK(x11.unit_multiplicity == 4);
}

TEST_CASE("epsilon agrees with the full-space oracle", "[martingale][epsilon]") {
  struct Case {
    double xi;
    int m, n;
  };
  for (const Case c : {Case{0.3, 1, 1}, Case{1.0, 2, 1}, Case{1.0, 1, 3}, Case{2.5, 3, 2}}) {
    const EpsilonResult r = epsilon(xxz_model(c.xi), c.m, c.n);
    const oracle::Mat bond = oracle::xxz_bond(c.xi);
    CHECK_THAT(r.epsilon, WithinAbs(oracle::epsilon(bond, 2, c.m, c.n), 1e-10));
    CHECK(r.unit_multiplicity == oracle::unit_multiplicity(bond, 2, c.m, c.n));
    CHECK(r.unit_multiplicity == static_cast<std::size_t>(c.m + c.n + 2));
  }
  const oracle::Mat bond = oracle::aklt_bond();
  for (auto [m, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
    const EpsilonResult r = epsilon(aklt_model(), m, n);
    CHECK_THAT(r.epsilon, WithinAbs(oracle::epsilon(bond, 3, m, n), 1e-10));
    CHECK(r.unit_multiplicity == oracle::unit_multiplicity(bond, 3, m, n));
  }
}

TEST_CASE("epsilon does not depend on spectator sites", "[martingale][epsilon][property]") {
  const ModelSpec model = xxz_model(0.6);
  const double base = epsilon(model, 2, 1).epsilon;
  for (AmbientPadding pad : {AmbientPadding{1, 0}, AmbientPadding{0, 1}, AmbientPadding{1, 2}}) {
    CHECK_THAT(epsilon(model, 2, 1, {}, pad).epsilon, WithinAbs(base, 1e-12));
  }
  CHECK_THROWS_AS(k_operator(model, 1, 1, {}, AmbientPadding{-1, 0}), ValidationError);
  CHECK_THROWS_AS(k_operator(model, 0, 1), ValidationError);
}

TEST_CASE("epsilon(m,1) increases with m on the kink chain", "[martingale][epsilon][property]") {
  for (double xi : {0.3, 1.0}) {
    double previous = 0.0;
    for (int m = 1; m <= 5; ++m) {
      const double e = epsilon(xxz_model(xi), m, 1).epsilon;
      CHECK(e > previous);
      CHECK(e < std::exp(-2.0 * xi) / (1.0 + std::exp(-2.0 * xi)));
      previous = e;
    }
  }
}

TEST_CASE("epsilon: crowding near the unit band is reported", "[martingale][epsilon]") {
  SolverOptions opts;
  opts.unit_guard = 0.9;
  CHECK_THROWS_AS(epsilon(aklt_model(), 1, 1, opts), NumericalAmbiguityError);
}

TEST_CASE("epsilon_sup provenance", "[martingale][epsilon]") {
  const EpsilonSup x = epsilon_sup(xxz_model(1.0), 2, 1, 4);
  CHECK(x.provenance == EpsilonProvenance::closed_form);
  CHECK(x.rigorous);
  CHECK_THAT(x.value, WithinAbs(std::exp(-2.0) / (1.0 + std::exp(-2.0)), 1e-15));

  const EpsilonSup computed = epsilon_sup(xxz_model(1.0), 1, 2, 3);
  CHECK(computed.provenance == EpsilonProvenance::computed_sup);
  CHECK_FALSE(computed.rigorous);
  double best = 0.0;
  for (int m = 1; m <= 3; ++m) best = std::max(best, epsilon(xxz_model(1.0), m, 2).epsilon);
  CHECK(computed.value == best);

  CHECK(epsilon_sup(xxz_model(1.0), 2, 2, 2).provenance == EpsilonProvenance::single_value);
  CHECK(epsilon_sup(aklt_model(), 1, 1, 1).provenance == EpsilonProvenance::closed_form);
  CHECK_THROWS_AS(epsilon_sup(xxz_model(1.0), 3, 2, 2), ValidationError);
  CHECK_THROWS_AS(epsilon_sup(xxz_model(1.0), 0, 2, 2), ValidationError);

  for (auto p : {EpsilonProvenance::closed_form, EpsilonProvenance::computed_sup,
                 EpsilonProvenance::single_value}) {
    CHECK(provenance_from_string(to_string(p)) == p);
  }
  CHECK_THROWS_AS(provenance_from_string("guess"), ValidationError);
}

TEST_CASE("gamma_table against the oracle, all solvers", "[martingale][gap]") {
  const ModelSpec model = xxz_model(0.8);
  for (GapSolver solver : {GapSolver::dense, GapSolver::sector_lanczos, GapSolver::lanczos}) {
    const GammaTable t = gamma_table(model, 6, solver);
    REQUIRE(t.entries.size() == 5);
    double running = 1e300;
    for (const auto& e : t.entries) {
      CHECK_THAT(e.gamma, WithinAbs(oracle::gap(oracle::chain(oracle::xxz_bond(0.8), 2, e.n)), 1e-9));
      CHECK(e.kernel_dim == static_cast<std::size_t>(e.n + 1));
      CHECK(e.solver == to_string(solver));
      running = std::min(running, e.gamma);
    }
    CHECK(t.gamma_N == running);
  }
  const GammaTable a = gamma_table(aklt_model(), 4);
  CHECK_THAT(a.entries[0].gamma, WithinAbs(1.0, 1e-10));
  CHECK_THAT(a.entries[1].gamma, WithinAbs(0.5, 1e-10));
  CHECK(a.entries[0].solver == "sector-lanczos");

  SolverOptions small;
  small.caps.dense = 8;
  CHECK_THROWS_AS(interval_gap(model, 4, GapSolver::dense, small), ValidationError);
  CHECK_THROWS_AS(interval_gap(model, 1, GapSolver::dense), ValidationError);
  CHECK_THROWS_AS(gamma_table(model, 1), ValidationError);
  CHECK(gap_solver_from_string(to_string(GapSolver::automatic)) == GapSolver::automatic);
  CHECK_THROWS_AS(gap_solver_from_string("fast"), ValidationError);
}

TEST_CASE("alpha_beta examples and domain", "[martingale][bound]") {
  const AlphaBeta zero = alpha_beta(0.0);
  CHECK(zero.alpha == 1.0);
  CHECK(zero.beta == 1.0);
  const AlphaBeta q = alpha_beta(0.25);
  CHECK_THAT(q.alpha, WithinAbs(1.0 - std::sqrt(3.0) / 2.0, 1e-15));
  CHECK_THAT(q.beta, WithinAbs(0.75 - std::sqrt(3.0) / 4.0, 1e-15));
  for (double e = 0.0; e < 0.5; e += 0.01) {
    const AlphaBeta ab = alpha_beta(e);
    CHECK(ab.alpha <= ab.beta + 1e-15);
    CHECK_THAT(ab.alpha, WithinAbs(1.0 - 2.0 * std::sqrt(e * (1.0 - e)), 1e-14));
  }
  CHECK_THROWS_AS(alpha_beta(0.5), ValidationError);
  CHECK_THROWS_AS(alpha_beta(-0.01), ValidationError);
  CHECK_THROWS_AS(alpha_beta(std::nan("")), ValidationError);
}

TEST_CASE("bound certificates for the built-in models", "[martingale][bound]") {
  const BoundCertificate a = bound_certificate(aklt_model(), 1, 1);
  CHECK_THAT(a.bound, WithinAbs(1.0 - std::sqrt(3.0) / 2.0, 1e-9));
  CHECK(a.rigorous);
  CHECK(a.gamma_excerpt.size() == 1);
  CHECK(certificate_self_consistency(a) <= 1e-15);

  for (double xi : {0.5, 2.0}) {
    const BoundCertificate x = bound_certificate(xxz_model(xi), 1, 1);
    CHECK_THAT(x.bound, WithinAbs(1.0 - 1.0 / std::cosh(xi), 1e-12));
    CHECK(x.bound <= x.gamma_mn);
    CHECK(x.shift_applied == 0.25);
  }
  const BoundCertificate c = bound_certificate(xxz_model(1.0), 2, 3);
  CHECK(c.bound > 0.0);
  CHECK(c.bound <= c.gamma_mn);
  CHECK(c.epsilon_provenance == EpsilonProvenance::computed_sup);
  CHECK_FALSE(c.rigorous);

  CHECK_THROWS_AS(bound_certificate(aklt_model(), 2, 1), ValidationError);
  CHECK_THROWS_AS(bound_certificate(aklt_model(), 0, 1), ValidationError);
}

TEST_CASE("operator inequality holds on small chains", "[martingale][theorem]") {
  const TheoremReport edge = verify_theorem_inequality(xxz_model(1.0), 1, 1, 2);
  CHECK(edge.passed);
  CHECK(edge.complement_dim == 1);
  for (int N = 3; N <= 5; ++N) {
    const TheoremReport r = verify_theorem_inequality(xxz_model(0.7), 1, 2, N);
    CHECK(r.passed);
    CHECK(r.method == "dense");
    CHECK(r.min_eigenvalue >= -1e-9);
  }
  BoundOptions lanczos;
  lanczos.numerics.theorem_dense_cap = 16;
  const TheoremReport viaLanczos = verify_theorem_inequality(aklt_model(), 1, 1, 4, lanczos);
  const TheoremReport viaDense = verify_theorem_inequality(aklt_model(), 1, 1, 4);
  CHECK(viaLanczos.method == "lanczos");
  CHECK(viaLanczos.passed);
  CHECK_THAT(viaLanczos.min_eigenvalue, WithinAbs(viaDense.min_eigenvalue, 1e-8));

  CHECK_THROWS_AS(verify_theorem_inequality(aklt_model(), 2, 1, 4), ValidationError);
  CHECK_THROWS_AS(verify_theorem_inequality(aklt_model(), 1, 1, 1), ValidationError);
}

TEST_CASE("Cauchy-Schwarz estimates on random instances", "[martingale][lemma]") {
  for (std::size_t dim : {2u, 5u, 12u}) {
    const LemmaReport r = verify_lemma_cs(100, dim, 7);
    CHECK(r.passed());
    CHECK_FALSE(r.counterexample);
    CHECK(r.worst_margin_a >= -1e-10);
    CHECK(r.worst_margin_b >= -1e-10);
  }
  const LemmaReport empty = verify_lemma_cs(0, 4, 1);
  CHECK(empty.passed());
  CHECK_THROWS_AS(verify_lemma_cs(1, 1, 1), ValidationError);

  const LemmaReport a = verify_lemma_cs(20, 6, 99);
  const LemmaReport b = verify_lemma_cs(20, 6, 99);
  CHECK(a.worst_margin_a == b.worst_margin_a);
  CHECK(a.worst_margin_b == b.worst_margin_b);

  // Negative slack forces every trial with a strictly positive margin to
  // count; the counterexample must then be valid JSON.
  const LemmaReport strict = verify_lemma_cs(5, 4, 3, -10.0);
  CHECK_FALSE(strict.passed());
  REQUIRE(strict.counterexample);
  json parsed;
  CHECK_NOTHROW(parsed = json::parse(*strict.counterexample));
  CHECK(parsed.contains("part"));
}

TEST_CASE("certificate JSON round trip is bit exact", "[martingale][certificate]") {
  BoundOptions opts;
  opts.timestamp = "2024-01-01T00:00:00Z";
  opts.numerics.kernel.tol_ker = 1e-11;
  const BoundCertificate cert = bound_certificate(xxz_model(0.37), 1, 2, opts);
  const std::string text = certificate_to_json(cert);
  const BoundCertificate back = certificate_from_json(text);
  CHECK(back.bound == cert.bound);
  CHECK(back.epsilon_mn == cert.epsilon_mn);
  CHECK(back.gamma_mn == cert.gamma_mn);
  CHECK(back.parameters.at("xi") == 0.37);
  CHECK(back.tol_ker == cert.tol_ker);
  CHECK(back.timestamp == cert.timestamp);
  CHECK(back.gamma_excerpt.size() == cert.gamma_excerpt.size());
  CHECK(certificate_to_json(back) == text);

  const CertificateCheck check = verify_certificate(back);
  CHECK(check.passed);
  CHECK(check.epsilon_discrepancy <= 1e-12);
  CHECK(check.gamma_discrepancy <= 1e-12);
}

TEST_CASE("tampered certificates are caught", "[martingale][certificate]") {
  const BoundCertificate cert = bound_certificate(aklt_model(), 1, 1);
  json doc = json::parse(certificate_to_json(cert));

  json decimal_mismatch = doc;
  decimal_mismatch["bound"]["decimal"] = "0.5";
  CHECK_THROWS_AS(certificate_from_json(decimal_mismatch.dump()), ValidationError);

  json wrong_bound = doc;
  wrong_bound["bound"] = {{"hex", "0x1p-2"}, {"decimal", "0.25"}};
  const CertificateCheck bad = verify_certificate(certificate_from_json(wrong_bound.dump()));
  CHECK_FALSE(bad.passed);
  CHECK(bad.self_consistency > 0.1);

  json wrong_gamma = doc;
  const double g = 0.75;
  char hex[64];
  std::snprintf(hex, sizeof hex, "%a", g);
  wrong_gamma["gamma_mn"] = {{"hex", hex}, {"decimal", "0.75"}};
  CHECK_FALSE(verify_certificate(certificate_from_json(wrong_gamma.dump())).passed);

  json missing = doc;
  missing.erase("alpha");
  CHECK_THROWS_AS(certificate_from_json(missing.dump()), ValidationError);
  json other = doc;
  other["format"] = "something-else";
  CHECK_THROWS_AS(certificate_from_json(other.dump()), ValidationError);
  CHECK_THROWS_AS(certificate_from_json("{"), ValidationError);
}
