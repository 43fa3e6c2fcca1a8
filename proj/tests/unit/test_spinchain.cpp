#include <catch_amalgamated.hpp>
#include <cmath>
#include <numeric>

#include "ffgap/errors.hpp"
#include "ffgap/models.hpp"
#include "ffgap/spinchain.hpp"
#include "oracles.hpp"

using namespace ffgap;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix comm(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("spin_operators: commutation relations and Casimir", "[spinchain]") {
  for (int two_s : {1, 2, 3, 4}) {
    const SpinRep s = spin_operators(two_s);
    REQUIRE(s.d == two_s + 1);
    const ComplexMatrix id = ComplexMatrix::Identity(s.d, s.d);
    CHECK(max_abs(comm(s.sz, s.splus) - s.splus) <= 1e-13);
    CHECK(max_abs(comm(s.sz, s.sminus) + s.sminus) <= 1e-13);
    CHECK(max_abs(comm(s.splus, s.sminus) - 2.0 * s.sz) <= 1e-13);
    const ComplexMatrix casimir =
        s.sz * s.sz + 0.5 * (s.splus * s.sminus + s.sminus * s.splus);
    const double ss1 = s.spin() * (s.spin() + 1.0);
    CHECK(max_abs(casimir - ss1 * id) <= 1e-13);
    // Ordered m = s, ..., -s.
    CHECK_THAT(s.sz(0, 0).real(), WithinAbs(s.spin(), 0.0));
    CHECK_THAT(s.sz(s.d - 1, s.d - 1).real(), WithinAbs(-s.spin(), 0.0));
  }
  CHECK_THROWS_AS(spin_operators(0), ValidationError);
}

TEST_CASE("spin-1/2 and spin-1 match the hand-written matrices", "[spinchain]") {
  const oracle::Spin h = oracle::spin_half();
  const SpinRep s1 = spin_operators(1);
  CHECK(max_abs(s1.sz - h.sz) == 0.0);
  CHECK(max_abs(s1.splus - h.sp) <= 1e-15);
  const oracle::Spin o = oracle::spin_one();
  const SpinRep s2 = spin_operators(2);
  CHECK(max_abs(s2.splus - o.sp) <= 1e-15);
}

TEST_CASE("hilbert_dim and SiteInterval", "[spinchain]") {
  CHECK(hilbert_dim(3, 4, 1000) == 81);
  CHECK(hilbert_dim(2, 0, 1) == 1);
  CHECK_THROWS_AS(hilbert_dim(2, 11, 1024), ValidationError);
  CHECK_THROWS_AS(SiteInterval(3, 2), ValidationError);
  const SiteInterval i(-2, 3);
  CHECK(i.length() == 6);
  CHECK(i.contains(0));
  CHECK(i.contains(SiteInterval(-1, 3)));
  CHECK_FALSE(i.contains(SiteInterval(-3, 0)));
}

TEST_CASE("embed_two_site: identity embeds as identity", "[spinchain]") {
  const LocalInteraction id{2, ComplexMatrix::Identity(4, 4), 0.0};
  const SiteInterval ambient(1, 5);
  for (int bond = 1; bond <= 4; ++bond) {
    const ComplexMatrix e = embed_two_site(id, bond, ambient).to_dense();
    CHECK(max_abs(e - ComplexMatrix::Identity(32, 32)) == 0.0);
  }
  CHECK_THROWS_AS(embed_two_site(id, 5, ambient), ValidationError);
  CHECK_THROWS_AS(embed_two_site(id, 0, ambient), ValidationError);
}

TEST_CASE("embed_two_site agrees with explicit Kronecker products", "[spinchain]") {
  const LocalInteraction h = xxz_interaction({0.8});
  const SiteInterval ambient(-1, 2);  // four sites
  for (int bond = -1; bond <= 1; ++bond) {
    const int left = bond - ambient.a;
    const int right = ambient.b - bond - 1;
    const ComplexMatrix expected = oracle::kron(
        oracle::kron(oracle::eye(oracle::ipow(2, left)), h.matrix), oracle::eye(oracle::ipow(2, right)));
    CHECK(max_abs(embed_two_site(h, bond, ambient).to_dense() - expected) <= 1e-15);
  }
}

TEST_CASE("embedding is covariant under translation", "[spinchain][property]") {
  const ModelSpec model = aklt_model();
  const ComplexMatrix a = assemble(model, SiteInterval(1, 3), SiteInterval(0, 4)).matrix.to_dense();
  const ComplexMatrix b =
      assemble(model, SiteInterval(11, 13), SiteInterval(10, 14)).matrix.to_dense();
  CHECK(max_abs(a - b) == 0.0);
}

TEST_CASE("assemble: one-site support is zero; spectra match the oracle", "[spinchain]") {
  const ModelSpec xxz = xxz_model(1.0);
  const ChainHamiltonian single = assemble(xxz, SiteInterval(2, 2), SiteInterval(1, 3));
  CHECK(single.matrix.dim() == 8);
  CHECK(single.matrix.to_dense().cwiseAbs().maxCoeff() == 0.0);

  for (int sites = 2; sites <= 6; ++sites) {
    const SiteInterval chain(1, sites);
    const RealVector ours = hermitian_eigenvalues(assemble(xxz, chain, chain).matrix.to_dense());
    const RealVector ref = oracle::spectrum(oracle::chain(oracle::xxz_bond(1.0), 2, sites));
    CHECK((ours - ref).cwiseAbs().maxCoeff() <= 1e-12);
  }
  const ModelSpec aklt = aklt_model();
  for (int sites = 2; sites <= 5; ++sites) {
    const SiteInterval chain(1, sites);
    const RealVector ours = hermitian_eigenvalues(assemble(aklt, chain, chain).matrix.to_dense());
    const RealVector ref = oracle::spectrum(oracle::chain(oracle::aklt_bond(), 3, sites));
    CHECK((ours - ref).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(assemble(xxz, SiteInterval(1, 4), SiteInterval(2, 5)), ValidationError);
}

TEST_CASE("terms on disjoint supports commute", "[spinchain][property]") {
  const ModelSpec aklt = aklt_model();
  const SiteInterval ambient(1, 5);
  const SparseHermitian a = assemble(aklt, SiteInterval(1, 2), ambient).matrix;
  const SparseHermitian b = assemble(aklt, SiteInterval(3, 5), ambient).matrix;
  CHECK(commutator_defect(a, b) <= 1e-14);
  const SparseHermitian c = assemble(aklt, SiteInterval(2, 3), ambient).matrix;
  CHECK(commutator_defect(a, c) > 1e-3);
}

TEST_CASE("sz_partition sizes", "[spinchain]") {
  auto sizes = [](int two_s, int sites) {
    std::vector<std::size_t> out;
    for (const auto& s : sz_partition(two_s, sites)) out.push_back(s.states.size());
    return out;
  };
  CHECK(sizes(1, 2) == std::vector<std::size_t>{1, 2, 1});
  CHECK(sizes(2, 2) == std::vector<std::size_t>{1, 2, 3, 2, 1});
  const auto big = sizes(1, 12);
  CHECK(std::accumulate(big.begin(), big.end(), std::size_t{0}) == 4096);
  CHECK(big[6] == 924);

  const auto part = sz_partition(2, 3);
  CHECK(part.front().two_sz == 6);
  CHECK(part.back().two_sz == -6);
}

TEST_CASE("sector spectra reproduce the full spectrum", "[spinchain][property]") {
  const std::vector<ModelSpec> models = {xxz_model(0.4), aklt_model()};
  for (const auto& model : models) {
    const int max_sites = model.local_dim() == 2 ? 6 : 5;
    for (int sites = 2; sites <= max_sites; ++sites) {
      const SiteInterval chain(1, sites);
      const SparseHermitian h = assemble(model, chain, chain).matrix;
      std::vector<double> pieces;
      for (const auto& sector : sz_sectors(model, chain)) {
        const RealVector ev = hermitian_eigenvalues(sector_block(h, sector));
        pieces.insert(pieces.end(), ev.data(), ev.data() + ev.size());
      }
      std::sort(pieces.begin(), pieces.end());
      const RealVector full = hermitian_eigenvalues(h.to_dense());
      REQUIRE(pieces.size() == static_cast<std::size_t>(full.size()));
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        CHECK_THAT(pieces[i], WithinAbs(full(static_cast<Eigen::Index>(i)), 1e-11));
      }
      CHECK(max_abs(sector_block_sparse(h, sz_sectors(model, chain)[1]).to_dense() -
                    sector_block(h, sz_sectors(model, chain)[1])) == 0.0);
    }
  }
}

TEST_CASE("Hamiltonians commute with total S3", "[spinchain]") {
  const SiteInterval chain(1, 4);
  const SparseHermitian sz = total_sz(1, chain);
  CHECK(commutator_defect(assemble(xxz_model(2.0), chain, chain).matrix, sz) <= 1e-14);
  CHECK(sz_commutator_defect(xxz_interaction({2.0}), 1) <= 1e-14);
  CHECK(sz_commutator_defect(aklt_interaction(), 2) <= 1e-14);

  // A transverse field breaks the symmetry.
  const SpinRep s = spin_operators(1);
  LocalInteraction broken{2, oracle::kron(s.splus + s.sminus, oracle::eye(2)) + 2.0 * oracle::eye(4), 0.0};
  CHECK(sz_commutator_defect(broken, 1) > 0.1);
  ModelSpec m;
  m.name = "broken";
  m.interaction = broken;
  m.conserves_sz = true;
  CHECK_THROWS_AS(sz_sectors(m, chain), ValidationError);
  m.conserves_sz = false;
  CHECK_THROWS_AS(sz_sectors(m, chain), ValidationError);
}

TEST_CASE("ground-state dimension does not depend on where the chain sits", "[spinchain][property]") {
  const ModelSpec model = xxz_model(1.3);
  for (int offset : {-7, 0, 5}) {
    const SiteInterval support(offset, offset + 3);
    const SiteInterval ambient(offset - 1, offset + 4);
    const SparseHermitian h = assemble(model, support, ambient).matrix;
    // (L+1) ground states of the support, times 2^2 for the spectator sites.
    CHECK(kernel_by_sectors(h, sz_sectors(model, ambient)).size() == 5 * 4);
  }
}

TEST_CASE("interval_kernel dimensions", "[spinchain]") {
  for (int sites = 1; sites <= 8; ++sites) {
    CHECK(interval_kernel(xxz_model(0.7), sites).size() == static_cast<std::size_t>(sites + 1));
  }
  CHECK(interval_kernel(aklt_model(), 1).size() == 3);
  for (int sites = 2; sites <= 6; ++sites) CHECK(interval_kernel(aklt_model(), sites).size() == 4);
}

TEST_CASE("check_frustration_free on built-in and broken models", "[spinchain]") {
  const FrustrationFreeReport x = check_frustration_free(xxz_model(1.0), 6);
  REQUIRE(x.levels.size() == 5);
  for (const auto& level : x.levels) {
    CHECK(level.ground_degeneracy == static_cast<std::size_t>(level.length + 1));
    CHECK(level.intersection_dim == level.ground_degeneracy);
  }
  const FrustrationFreeReport a = check_frustration_free(aklt_model(), 5);
  for (const auto& level : a.levels) CHECK(level.ground_degeneracy == 4);
  CHECK_THAT(a.min_local_eigenvalue, WithinAbs(0.0, 1e-12));

  ModelSpec negative;
  negative.name = "negative";
  negative.interaction = LocalInteraction{2, -ComplexMatrix::Identity(4, 4), 0.0};
  try {
    check_frustration_free(negative, 4);
    FAIL("expected rejection");
  } catch (const FrustrationFreeError& e) {
    CHECK(e.failing_length() == 2);
  }

  CHECK_THROWS_AS(check_frustration_free(aklt_model(), 1), ValidationError);
  DimensionCaps tight;
  tight.dense = 64;
  tight.sector = 64;
  tight.full = 64;
  CHECK_THROWS_AS(check_frustration_free(aklt_model(), 5, tight), ValidationError);
}
