#include <catch2/catch_amalgamated.hpp>

#include "spherodeck/lie_algebra.hpp"
#include "spherodeck/rng.hpp"
#include "test_support.hpp"

using namespace spherodeck;
using namespace testsup;

namespace {

LieAlgebraPresentation make_sl2() { return {"sl2", 2, sl2_basis()}; }

Subspace random_subspace(const LieAlgebraPresentation& g, Rng& rng) {
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(g.dim())));
  MatrixXd c(g.dim(), k);
  for (int i = 0; i < c.size(); ++i) c.data()[i] = rng.gaussian();
  return Subspace::from_coord_span(g, c);
}

}  // namespace

TEST_CASE("bracket basics") {
  auto b = sl2_basis();
  const MatrixXd h = b[0], e = b[1], f = b[2];
  REQUIRE((bracket(e, f) - h).norm() == 0.0);
  REQUIRE(bracket(e, e).norm() == 0.0);
  REQUIRE_THROWS_AS(bracket(h, MatrixXd::Zero(3, 3)), InvalidInput);
}

TEST_CASE("bracket of diagonal elements stays in the diagonal subalgebra") {
  LieAlgebraPresentation g("sl2x3", 6, sl2_power_basis(3));
  std::vector<MatrixXd> diag_mats;
  for (const auto& b : sl2_basis()) {
    MatrixXd m = MatrixXd::Zero(6, 6);
    for (int f = 0; f < 3; ++f) m.block(2 * f, 2 * f, 2, 2) = b;
    diag_mats.push_back(m);
  }
  Subspace h = Subspace::from_matrices(g, diag_mats);
  Rng rng(11, "diag-bracket");
  for (int trial = 0; trial < 20; ++trial) {
    VectorXd c1(3), c2(3);
    for (int i = 0; i < 3; ++i) {
      c1(i) = rng.gaussian();
      c2(i) = rng.gaussian();
    }
    MatrixXd x = c1(0) * diag_mats[0] + c1(1) * diag_mats[1] + c1(2) * diag_mats[2];
    MatrixXd y = c2(0) * diag_mats[0] + c2(1) * diag_mats[1] + c2(2) * diag_mats[2];
    REQUIRE(h.contains_matrix(bracket(x, y)));
  }
}

TEST_CASE("presentation invariants reject bad bases") {
  auto dep = sl2_basis();
  dep.push_back(dep[0] + dep[1]);
  REQUIRE_THROWS_AS(LieAlgebraPresentation("dep", 2, dep), InvalidPresentation);

  // Not closed under bracket: span{H, E+F} brackets outside itself.
  auto open_basis = std::vector<MatrixXd>{sl2_basis()[0], sl2_basis()[1] + sl2_basis()[2]};
  LieAlgebraPresentation notclosed("notclosed", 2, open_basis);
  REQUIRE_FALSE(notclosed.invariant_failures().empty());
}

TEST_CASE("cartan decomposition dimensions on the catalog shapes") {
  {
    auto cd = cartan_decompose(make_sl2());
    REQUIRE(cd.k_part.dim() == 1);
    REQUIRE(cd.s_part.dim() == 2);
  }
  {
    LieAlgebraPresentation g("sl2x3", 6, sl2_power_basis(3));
    auto cd = cartan_decompose(g);
    REQUIRE(cd.k_part.dim() == 3);
    REQUIRE(cd.s_part.dim() == 6);
  }
  {
    LieAlgebraPresentation g("gl2+gl1", 3, gl2_gl1_basis());
    auto cd = cartan_decompose(g);
    REQUIRE(cd.k_part.dim() == 1);
    REQUIRE(cd.s_part.dim() == 4);
  }
}

TEST_CASE("theta is an isometric involution and kappa is theta-invariant") {
  LieAlgebraPresentation g("sp2", 4, sp2_basis());
  const MatrixXd& th = g.theta_op();
  const int d = g.dim();
  REQUIRE((th * th - MatrixXd::Identity(d, d)).norm() < 1e-10);
  REQUIRE((th.transpose() * g.kappa_gram() * th - g.kappa_gram()).norm() < 1e-10);
}

TEST_CASE("jacobi identity holds for computed structure constants") {
  for (const auto* name : {"sl2x3", "sp2"}) {
    LieAlgebraPresentation g =
        std::string(name) == "sl2x3" ? LieAlgebraPresentation("sl2x3", 6, sl2_power_basis(3))
                                     : LieAlgebraPresentation("sp2", 4, sp2_basis());
    const auto& b = g.basis();
    Rng rng(7, "jacobi");
    for (int trial = 0; trial < 25; ++trial) {
      const int i = static_cast<int>(rng.below(b.size()));
      const int j = static_cast<int>(rng.below(b.size()));
      const int k = static_cast<int>(rng.below(b.size()));
      const MatrixXd resid = bracket(b[i], bracket(b[j], b[k])) +
                             bracket(b[j], bracket(b[k], b[i])) +
                             bracket(b[k], bracket(b[i], b[j]));
      REQUIRE(resid.norm() < tol::tau_rank * 100);
    }
  }
}

TEST_CASE("subspace sum and intersection on the cartan split") {
  auto g = make_sl2();
  auto cd = cartan_decompose(g);
  REQUIRE(subspace_sum(cd.k_part, cd.s_part).dim() == 3);
  REQUIRE(subspace_intersect(cd.k_part, cd.s_part).dim() == 0);
  REQUIRE(subspace_sum(cd.k_part, cd.k_part).dim() == cd.k_part.dim());
  REQUIRE(subspace_intersect(cd.k_part, cd.k_part).dim() == cd.k_part.dim());
}

TEST_CASE("dimension formula on 1000 random subspace pairs") {
  LieAlgebraPresentation g("sl2x3", 6, sl2_power_basis(3));
  Rng rng(23, "dimension-formula");
  for (int trial = 0; trial < 1000; ++trial) {
    Subspace u = random_subspace(g, rng);
    Subspace v = random_subspace(g, rng);
    REQUIRE(subspace_sum(u, v).dim() + subspace_intersect(u, v).dim() == u.dim() + v.dim());
  }
}

TEST_CASE("grassmann stability under re-orthonormalization") {
  LieAlgebraPresentation g("gl2+gl1", 3, gl2_gl1_basis());
  Rng rng(31, "grassmann");
  for (int trial = 0; trial < 50; ++trial) {
    Subspace u = random_subspace(g, rng);
    // Re-span by a random invertible recombination.
    MatrixXd t(u.dim(), u.dim());
    do {
      for (int i = 0; i < t.size(); ++i) t.data()[i] = rng.gaussian();
    } while (std::abs(t.determinant()) < 1e-3);
    Subspace u2 = Subspace::from_coord_span(g, u.frame() * t);
    REQUIRE(u2.dim() == u.dim());
    REQUIRE(contains(u, u2));
    REQUIRE(contains(u2, u));
  }
}

TEST_CASE("mismatched parents are rejected") {
  auto g1 = make_sl2();
  auto g2 = make_sl2();
  auto c1 = cartan_decompose(g1);
  auto c2 = cartan_decompose(g2);
  REQUIRE_THROWS_AS(subspace_sum(c1.k_part, c2.k_part), InvalidInput);
}
