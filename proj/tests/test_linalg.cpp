#include <catch2/catch_amalgamated.hpp>

#include "spherodeck/linalg.hpp"
#include "spherodeck/rng.hpp"

using namespace spherodeck;

TEST_CASE("orth and rank agree on random low-rank matrices") {
  Rng rng(17, "linalg");
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(6));
    const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    MatrixXd a(n, r), b(r, n + 2);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = rng.gaussian();
    for (int i = 0; i < b.size(); ++i) b.data()[i] = rng.gaussian();
    MatrixXd m = a * b;
    REQUIRE(rank_of(m) == r);
    MatrixXd q = orth(m);
    REQUIRE(q.cols() == r);
    REQUIRE((q.transpose() * q - MatrixXd::Identity(r, r)).norm() < 1e-12);
    // Columns of m are reproduced by the projector.
    REQUIRE((q * (q.transpose() * m) - m).norm() < 1e-9 * std::max(1.0, m.norm()));
  }
}

TEST_CASE("nullspace complements the row rank") {
  Rng rng(3, "nullspace");
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 3 + static_cast<int>(rng.below(4));
    const int cols = 5 + static_cast<int>(rng.below(4));
    MatrixXd m(rows, cols);
    for (int i = 0; i < m.size(); ++i) m.data()[i] = rng.gaussian();
    MatrixXd nu = nullspace(m);
    REQUIRE(nu.cols() == cols - rank_of(m));
    REQUIRE((m * nu).norm() < 1e-10);
  }
}

TEST_CASE("polar decomposition reconstructs the input") {
  Rng rng(5, "polar");
  for (int trial = 0; trial < 30; ++trial) {
    MatrixXd a(3, 3);
    do {
      for (int i = 0; i < 9; ++i) a.data()[i] = rng.gaussian();
    } while (std::abs(a.determinant()) < 0.1);
    Polar p = polar(a);
    REQUIRE((p.q * sym_exp(p.x) - a).norm() < 1e-10 * a.norm());
    REQUIRE((p.q.transpose() * p.q - MatrixXd::Identity(3, 3)).norm() < 1e-10);
    REQUIRE((p.x - p.x.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("rational parsing") {
  REQUIRE(parse_rational("3/5") == 3.0 / 5.0);
  REQUIRE(parse_rational("-7/2") == -3.5);
  REQUIRE(parse_rational("2.25") == 2.25);
  REQUIRE_THROWS_AS(parse_rational("1/0"), InvalidInput);
}

TEST_CASE("rng substreams are deterministic and independent") {
  Rng a(42, "stream", 7), b(42, "stream", 7), c(42, "stream", 8);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    REQUIRE(x == b.uniform());
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
  bool differs = false;
  Rng a2(42, "stream", 7);
  for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
  REQUIRE(differs);
}
