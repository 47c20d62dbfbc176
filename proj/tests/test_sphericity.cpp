#include <catch2/catch_amalgamated.hpp>

#include "spherodeck/catalog.hpp"
#include "spherodeck/rng.hpp"
#include "spherodeck/sphericity.hpp"

using namespace spherodeck;

namespace {

const SpaceDefinition& space(const std::string& name) {
  static std::map<std::string, SpaceDefinition> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_space(name)).first;
  return it->second;
}

}  // namespace

TEST_CASE("group case: open chambers are the mixed-sign ones") {
  const auto& sp = space("group_sl2");
  auto cert = certify_sphericity(sp.roots, sp.h, sp.cartan);
  REQUIRE(cert.per_parabolic.size() == 4);
  int open_count = 0;
  for (const auto& e : cert.per_parabolic) {
    if (e.open) {
      ++open_count;
      REQUIRE(e.dim_p_plus_h == 6);
      REQUIRE(e.dim_p_cap_h == 1);
    }
  }
  REQUIRE(open_count == 2);
  REQUIRE(cert.is_spherical);
  REQUIRE_FALSE(cert.is_pure);

  SECTION("minimal parabolic gives a spherical pair; F = Pi does not") {
    const auto& empty_f = cert.spherical_pairs.front();
    REQUIRE(empty_f.F.empty());
    REQUIRE(empty_f.condition1);  // m ^ s = 0
    REQUIRE(empty_f.condition2);
    const auto& full_f = cert.spherical_pairs.back();
    REQUIRE(full_f.F.size() == 2);
    REQUIRE_FALSE(full_f.condition1);  // s inside h fails
  }
}

TEST_CASE("degenerate triple: P' open, P'' not open") {
  const auto& sp = space("triple_sl2_degenerate");
  // Chamber signs (+,-,+) = P'-type, (+,+,+) = P''-type.
  MatrixXd hmat(2, 2), bmat(2, 2);
  hmat << 1, 0, 0, -1;
  bmat << 0, 1, 1, 0;
  MatrixXd xprime = MatrixXd::Zero(6, 6), xsecond = MatrixXd::Zero(6, 6);
  xprime.block(0, 0, 2, 2) = hmat;
  xprime.block(2, 2, 2, 2) = -hmat;
  xprime.block(4, 4, 2, 2) = bmat;
  xsecond.block(0, 0, 2, 2) = hmat;
  xsecond.block(2, 2, 2, 2) = hmat;
  xsecond.block(4, 4, 2, 2) = bmat;

  const auto locp = chamber_of(sp.roots, xprime);
  const auto locs = chamber_of(sp.roots, xsecond);
  const auto pprime = standard_parabolic(sp.roots, {}, locp.chamber);
  const auto psecond = standard_parabolic(sp.roots, {}, locs.chamber);

  const auto rp = test_open(pprime, sp.h);
  REQUIRE(rp.open);
  REQUIRE(rp.dim_p_plus_h == 9);
  REQUIRE(rp.dim_p_cap_h == 0);

  const auto rs2 = test_open(psecond, sp.h);
  REQUIRE_FALSE(rs2.open);
  REQUIRE(rs2.dim_p_plus_h == 8);
  REQUIRE(rs2.dim_p_cap_h == 1);

  auto cert = certify_sphericity(sp.roots, sp.h, sp.cartan);
  REQUIRE(cert.is_spherical);
  REQUIRE(cert.is_pure);
  REQUIRE_FALSE(cert.spherical_pairs.back().condition1);
}

TEST_CASE("generic triple: every chamber is open") {
  const auto& sp = space("triple_sl2_generic");
  auto cert = certify_sphericity(sp.roots, sp.h, sp.cartan);
  REQUIRE(cert.per_parabolic.size() == 8);
  for (const auto& e : cert.per_parabolic) {
    REQUIRE(e.open);
    REQUIRE(e.dim_p_cap_h == 0);
  }
  REQUIRE(cert.is_pure);
}

TEST_CASE("gp_gl2_gl1 is open and pure at a minimal parabolic") {
  const auto& sp = space("gp_gl2_gl1");
  auto cert = certify_sphericity(sp.roots, sp.h, sp.cartan);
  bool pure_witness = false;
  for (const auto& e : cert.per_parabolic)
    pure_witness |= (e.open && e.dim_p_cap_h == 0);
  REQUIRE(pure_witness);
  REQUIRE(cert.is_spherical);
  REQUIRE(cert.is_pure);
}

TEST_CASE("test_open is invariant under base change") {
  const auto& sp = space("triple_sl2_degenerate");
  auto minimal = enumerate_minimal_parabolics(sp.roots);
  Rng rng(5, "base-change");
  for (const auto& pd : minimal) {
    const auto ref = test_open(pd, sp.h);
    MatrixXd t(sp.h.dim(), sp.h.dim());
    do {
      for (int i = 0; i < t.size(); ++i) t.data()[i] = rng.gaussian();
    } while (std::abs(t.determinant()) < 1e-3);
    Subspace h2 = Subspace::from_coord_span(*sp.g, sp.h.frame() * t);
    const auto alt = test_open(pd, h2);
    REQUIRE(alt.open == ref.open);
    REQUIRE(alt.dim_p_plus_h == ref.dim_p_plus_h);
    REQUIRE(alt.dim_p_cap_h == ref.dim_p_cap_h);
  }
}

TEST_CASE("monotonicity in F") {
  for (const auto* name : {"group_sl2", "gp_gl2_gl1", "sp2_chain"}) {
    const auto& sp = space(name);
    const int r = sp.roots.rank();
    for (int c = 0; c < static_cast<int>(sp.roots.chambers.size()); ++c) {
      const bool min_open = test_open(standard_parabolic(sp.roots, {}, c), sp.h).open;
      if (!min_open) continue;
      for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<int> F;
        for (int j = 0; j < r; ++j)
          if (mask & (1u << j)) F.push_back(j);
        REQUIRE(test_open(standard_parabolic(sp.roots, F, c), sp.h).open);
      }
    }
  }
}

TEST_CASE("spherical pair implies some open minimal parabolic") {
  for (const auto& name : catalog_names()) {
    const auto& sp = space(name);
    auto cert = certify_sphericity(sp.roots, sp.h, sp.cartan);
    for (const auto& pair : cert.spherical_pairs)
      if (pair.condition1 && pair.condition2) REQUIRE(cert.is_spherical);
  }
}

TEST_CASE("interior point search on the group case") {
  const auto& sp = space("group_sl2");

  SECTION("identity alone fails with rank deficit 1") {
    // Independent rank oracle: stack k + a + h directly.
    std::vector<MatrixXd> mats;
    for (int j = 0; j < sp.cartan.k_part.dim(); ++j) mats.push_back(sp.cartan.k_part.matrix(j));
    for (const auto& m : sp.a_basis) mats.push_back(m);
    for (const auto& m : sp.h_basis) mats.push_back(m);
    MatrixXd stack(16, static_cast<int>(mats.size()));
    for (std::size_t i = 0; i < mats.size(); ++i) stack.col(static_cast<int>(i)) = vec(mats[i]);
    REQUIRE(rank_of(stack) == 5);

    auto res = interior_point_search(sp.roots, sp.h, sp.cartan, {MatrixXd::Zero(4, 4)});
    REQUIRE_FALSE(res.found);
  }

  SECTION("a = (exp(diag(1,-1)), e) succeeds") {
    MatrixXd x = MatrixXd::Zero(4, 4);
    x(0, 0) = 1;
    x(1, 1) = -1;
    auto res = interior_point_search(sp.roots, sp.h, sp.cartan, {x});
    REQUIRE(res.found);
  }

  SECTION("default grid succeeds and open chambers reach the full ray limit") {
    auto res = interior_point_search(sp.roots, sp.h, sp.cartan,
                                     interior_point_grid(sp.roots, 7));
    REQUIRE(res.found);
    REQUIRE(res.limit_full);
    auto cert = certify_sphericity(sp.roots, sp.h, sp.cartan);
    REQUIRE(cert.spherical_pairs.front().condition1);
    for (const auto& e : cert.per_parabolic)
      if (e.open) REQUIRE(res.limit_dims[e.chamber] == 6);
  }
}

TEST_CASE("full subalgebra succeeds at the identity") {
  const auto& sp = space("group_sl2");
  auto res = interior_point_search(sp.roots, Subspace::full(*sp.g), sp.cartan,
                                   {MatrixXd::Zero(4, 4)});
  REQUIRE(res.found);
}

TEST_CASE("empty grid is invalid") {
  const auto& sp = space("group_sl2");
  REQUIRE_THROWS_AS(interior_point_search(sp.roots, sp.h, sp.cartan, {}), InvalidInput);
}
