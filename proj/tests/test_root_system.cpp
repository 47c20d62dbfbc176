#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <set>

#include "spherodeck/root_system.hpp"
#include "spherodeck/rng.hpp"
#include "test_support.hpp"

using namespace spherodeck;
using namespace testsup;

namespace {

std::vector<MatrixXd> sl2_cubed_a_basis(int n = 6) {
  // a = a0 x a0 x a0, the diagonal direction in each factor.
  MatrixXd h = sl2_basis()[0];
  return {block_embed(h, 0, n), block_embed(h, 2, n), block_embed(h, 4, n)};
}

/// Independent root-counting oracle: eigenvalues of ad on a generic element
/// with irrational weights, clustered by the value vector of all ad
/// operators on (numerically computed) invariant subspaces. Uses the
/// non-symmetric eigensolver, a different path from compute_roots.
int oracle_count_roots(const LieAlgebraPresentation& g, const std::vector<MatrixXd>& a_basis) {
  MatrixXd x = MatrixXd::Zero(g.ambient_size(), g.ambient_size());
  double w = 1.0;
  for (const auto& b : a_basis) {
    w *= 1.7320508075688772;  // sqrt(3) spacing, different from the library's pi
    x += w * b;
  }
  const MatrixXd ad = g.ad_operator(x);
  Eigen::EigenSolver<MatrixXd> es(ad);
  std::vector<double> vals;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    REQUIRE(std::abs(es.eigenvalues()(i).imag()) < 1e-7);
    vals.push_back(es.eigenvalues()(i).real());
  }
  std::sort(vals.begin(), vals.end());
  int clusters = 0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (i == 0 || vals[i] - vals[i - 1] > 1e-6) ++clusters;
  // Subtract the zero cluster.
  bool has_zero = false;
  for (double v : vals)
    if (std::abs(v) < 1e-7) has_zero = true;
  return clusters - (has_zero ? 1 : 0);
}

}  // namespace

TEST_CASE("sl2 root system") {
  LieAlgebraPresentation g("sl2", 2, sl2_basis());
  auto rs = compute_roots(g, {sl2_basis()[0]});
  REQUIRE(rs.roots.size() == 2);
  REQUIRE(rs.positive.size() == 1);
  REQUIRE(rs.simple.size() == 1);
  const MatrixXd h = sl2_basis()[0];
  REQUIRE(rs.eval(rs.roots[rs.positive[0]].alpha, h) == Catch::Approx(2.0));
  REQUIRE(rs.roots[0].multiplicity == 1);
  REQUIRE(rs.zero_space.dim() == 1);
  REQUIRE(rs.m_space.dim() == 0);
  REQUIRE(rs.weyl.size() == 2);

  // Minimal parabolic for the reference chamber is the upper Borel.
  auto paras = enumerate_minimal_parabolics(rs);
  REQUIRE(paras.size() == 2);
  REQUIRE(paras[0].p_F.dim() == 2);
  MatrixXd e = sl2_basis()[1];
  REQUIRE(paras[0].p_F.contains_matrix(e));
  REQUIRE(paras[1].p_F.contains_matrix(sl2_basis()[2]));
}

TEST_CASE("sl2 cubed product root system") {
  LieAlgebraPresentation g("sl2x3", 6, sl2_power_basis(3));
  auto rs = compute_roots(g, sl2_cubed_a_basis());
  REQUIRE(rs.roots.size() == 6);
  for (const auto& r : rs.roots) REQUIRE(r.multiplicity == 1);
  REQUIRE(rs.weyl.size() == 8);
  REQUIRE(rs.chambers.size() == 8);
  REQUIRE(enumerate_minimal_parabolics(rs).size() == 8);
}

TEST_CASE("sp2 root system is C2") {
  LieAlgebraPresentation g("sp2", 4, sp2_basis());
  // 2-dim split Cartan: diag(s+t, s-t, -s-t, -s+t)-type block elements.
  const MatrixXd z = MatrixXd::Zero(2, 2);
  MatrixXd d1(2, 2), d2(2, 2);
  d1 << 1, 0, 0, 1;
  d2 << 1, 0, 0, -1;
  std::vector<MatrixXd> a = {sp2_elem(d1, z, z), sp2_elem(d2, z, z)};
  auto rs = compute_roots(g, a);
  REQUIRE(rs.roots.size() == 8);
  REQUIRE(oracle_count_roots(g, a) == 8);
  REQUIRE(rs.simple.size() == 2);
  REQUIRE(rs.weyl.size() == 8);  // |W(C2)| = 8
  int total = rs.zero_space.dim();
  for (const auto& r : rs.roots) total += r.multiplicity;
  REQUIRE(total == g.dim());

  SECTION("standard parabolic dimensions for F = {alpha_1}") {
    auto pd = standard_parabolic(rs, {0});
    REQUIRE(pd.a_F.dim() == 1);
    REQUIRE(pd.p_F.dim() == pd.m_langlands.dim() + pd.a_F.dim() + pd.n_F.dim());
    auto pd1 = standard_parabolic(rs, {1});
    REQUIRE(pd1.a_F.dim() == 1);
    auto pall = standard_parabolic(rs, {0, 1});
    REQUIRE(pall.p_F.dim() == g.dim());
    auto pmin = standard_parabolic(rs, {});
    REQUIRE(contains(pd.p_F, pmin.p_F));
    REQUIRE(contains(pall.p_F, pd.p_F));
  }
}

TEST_CASE("root space eigen-residuals") {
  LieAlgebraPresentation g("sp2", 4, sp2_basis());
  const MatrixXd z = MatrixXd::Zero(2, 2);
  MatrixXd d1(2, 2), d2(2, 2);
  d1 << 1, 0, 0, 1;
  d2 << 1, 0, 0, -1;
  std::vector<MatrixXd> a = {sp2_elem(d1, z, z), sp2_elem(d2, z, z)};
  auto rs = compute_roots(g, a);
  for (const auto& r : rs.roots)
    for (int j = 0; j < r.space.dim(); ++j) {
      const MatrixXd v = r.space.matrix(j);
      for (int i = 0; i < 2; ++i) {
        const double ai = r.alpha(i);
        REQUIRE((bracket(a[i], v) - ai * v).norm() <= tol::tau_root * v.norm() * 10);
      }
    }
}

TEST_CASE("dual basis and chamber_of") {
  LieAlgebraPresentation g("sl2x3", 6, sl2_power_basis(3));
  auto rs = compute_roots(g, sl2_cubed_a_basis());
  REQUIRE(rs.dual_basis.cols() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      REQUIRE(rs.simple_root(i).dot(rs.dual_basis.col(j).transpose()) ==
              Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-9));

  const MatrixXd h = sl2_basis()[0];

  SECTION("zero element maps to the reference chamber with identity word") {
    auto loc = chamber_of(rs, MatrixXd::Zero(6, 6));
    REQUIRE(loc.chamber == 0);
    REQUIRE(loc.word.empty());
  }

  SECTION("sign pattern (+,-,+) needs exactly the middle reflection") {
    MatrixXd x = block_embed(h, 0, 6) - block_embed(h, 2, 6) + block_embed(h, 4, 6);
    auto loc = chamber_of(rs, x);
    REQUIRE(loc.word.size() == 1);
    // Dominant representative has all simple-root values nonnegative.
    for (int j = 0; j < 3; ++j)
      REQUIRE(rs.simple_root(j).dot(loc.dominant.transpose()) >= -tol::tau_root);
  }

  SECTION("random elements land in the closure of their chamber") {
    Rng rng(9, "chamber-of");
    for (int trial = 0; trial < 1000; ++trial) {
      VectorXd c(3);
      for (int i = 0; i < 3; ++i) c(i) = rng.gaussian();
      const MatrixXd x = rs.a_matrix(c);
      auto loc = chamber_of(rs, x);
      const auto& ch = rs.chambers[loc.chamber];
      for (const auto& wall : ch.simple_walls)
        REQUIRE(wall.dot(rs.a_coords(x).transpose()) >= -tol::tau_root);
    }
  }
}

TEST_CASE("sl2 nontrivial chamber reflection") {
  LieAlgebraPresentation g("sl2", 2, sl2_basis());
  auto rs = compute_roots(g, {sl2_basis()[0]});
  MatrixXd x(2, 2);
  x << -1, 0, 0, 1;
  auto loc = chamber_of(rs, x);
  REQUIRE(loc.word.size() == 1);
  REQUIRE(loc.dominant(0) == Catch::Approx(1.0));
}

TEST_CASE("weyl enumeration respects the resource bound") {
  LieAlgebraPresentation g("sp2", 4, sp2_basis());
  const MatrixXd z = MatrixXd::Zero(2, 2);
  MatrixXd d1(2, 2), d2(2, 2);
  d1 << 1, 0, 0, 1;
  d2 << 1, 0, 0, -1;
  std::vector<MatrixXd> a = {sp2_elem(d1, z, z), sp2_elem(d2, z, z)};
  REQUIRE_THROWS_AS(compute_roots(g, a, 4), ResourceLimit);
}

TEST_CASE("non-abelian a is rejected") {
  LieAlgebraPresentation g("sl2", 2, sl2_basis());
  REQUIRE_THROWS_AS(compute_roots(g, {sl2_basis()[0], sl2_basis()[1] + sl2_basis()[2]}),
                    InvalidInput);
}
