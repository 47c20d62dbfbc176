#include <catch2/catch_amalgamated.hpp>

#include "spherodeck/catalog_io.hpp"
#include "spherodeck/rng.hpp"

using namespace spherodeck;

TEST_CASE("all shipped entries load and validate") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    REQUIRE_NOTHROW(build_space(name));
  }
}

TEST_CASE("group_sl2 dimensions") {
  auto sp = build_space("group_sl2");
  REQUIRE(sp.g->dim() == 6);
  REQUIRE(sp.h.dim() == 3);
  REQUIRE(sp.roots.a_dim() == 2);
  REQUIRE(sp.s_cap_q.dim() == 2);
  REQUIRE(sp.spherical_reps.size() == 1);
  // Highest weight of std x dual-std w.r.t. the reference chamber is (1,1).
  REQUIRE(sp.spherical_reps[0].lambda.size() == 2);
  REQUIRE(sp.spherical_reps[0].lambda(0) == Catch::Approx(1.0));
  REQUIRE(sp.spherical_reps[0].lambda(1) == Catch::Approx(1.0));
}

TEST_CASE("triple_sl2_generic has 8 minimal parabolics") {
  auto sp = build_space("triple_sl2_generic");
  REQUIRE(enumerate_minimal_parabolics(sp.roots).size() == 8);
  REQUIRE(sp.roots.roots.size() == 6);
}

TEST_CASE("sp2_chain has a C2 root system over the chain torus") {
  auto sp = build_space("sp2_chain");
  REQUIRE(sp.roots.roots.size() == 8);
  REQUIRE(sp.roots.weyl.size() == 8);
  REQUIRE(sp.h.dim() == 4);
}

TEST_CASE("round-trip: serialize(load(x)) is byte-identical") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    auto sp = build_space(name);
    const json doc = serialize_space(sp);
    auto sp2 = load_space_json(doc);
    REQUIRE(serialize_space(sp2).dump() == doc.dump());
  }
}

TEST_CASE("loading a file with non-theta-stable h fails validation") {
  auto sp = build_space("group_sl2");
  json doc = serialize_space(sp);
  // Replace h by the span of the diagonal raising operator: neither a
  // subalgebra nor theta-stable.
  json e = json::array();
  MatrixXd m = MatrixXd::Zero(4, 4);
  m(0, 1) = 1;
  m(2, 3) = 1;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) e.push_back(m(r, c));
  doc["h_basis"] = json::array({e});
  try {
    load_space_json(doc);
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    bool mentions_theta = false;
    for (const auto& f : err.failures) mentions_theta |= (f.find("theta") != std::string::npos);
    REQUIRE(mentions_theta);
  }
}

TEST_CASE("schema errors carry a pointer") {
  json doc = serialize_space(build_space("group_sl2"));
  doc.erase("decomposition");
  try {
    load_space_json(doc);
    FAIL("expected SchemaError");
  } catch (const SchemaError& err) {
    REQUIRE(err.pointer == "/decomposition");
  }
}

TEST_CASE("rational strings round through exactly") {
  auto sp = build_space("triple_sl2_generic");
  const json doc = serialize_space(sp);
  // The third direction uses exact 3/5 and 4/5 entries.
  const std::string dumped = doc.dump();
  REQUIRE(dumped.find("\"3/5\"") != std::string::npos);
  auto sp2 = load_space_json(doc);
  REQUIRE(sp2.a_basis[2](0, 0) == sp.a_basis[2](0, 0));
}

TEST_CASE("variety residuals accept group elements and reject others") {
  auto sp = build_space("group_sl2");
  REQUIRE(sp.variety_residual(MatrixXd::Identity(4, 4)) < 1e-12);
  MatrixXd bad = MatrixXd::Identity(4, 4);
  bad(0, 0) = 2.0;  // det of the first SL block is 2
  REQUIRE(sp.variety_residual(bad) > 0.5);
  MatrixXd offblock = MatrixXd::Identity(4, 4);
  offblock(0, 3) = 1.0;
  REQUIRE(sp.variety_residual(offblock) > 0.5);

  auto spo = build_space("gp_o12_o11");
  REQUIRE(spo.variety_residual(MatrixXd::Identity(5, 5)) < 1e-12);
  // A boost preserves the form.
  MatrixXd boost = MatrixXd::Identity(5, 5);
  const double t = 0.7;
  boost(0, 0) = boost(1, 1) = std::cosh(t);
  boost(0, 1) = boost(1, 0) = std::sinh(t);
  REQUIRE(spo.variety_residual(boost) < 1e-12);
}

TEST_CASE("rep actions are homomorphisms on sampled pairs") {
  auto sp = build_space("group_sl2");
  const auto& rep = sp.spherical_reps[0];
  Rng rng(3, "rep-hom");
  for (int trial = 0; trial < 20; ++trial) {
    MatrixXd x = MatrixXd::Zero(4, 4), y = MatrixXd::Zero(4, 4);
    auto rand_sl2 = [&](int off, MatrixXd& m) {
      MatrixXd s(2, 2);
      s << rng.gaussian(), rng.gaussian(), rng.gaussian(), -s(0, 0);
      m.block(off, off, 2, 2) = s;
    };
    rand_sl2(0, x);
    rand_sl2(2, x);
    rand_sl2(0, y);
    rand_sl2(2, y);
    const MatrixXd dx = rep_algebra_action(sp, rep, x);
    const MatrixXd dy = rep_algebra_action(sp, rep, y);
    const MatrixXd db = rep_algebra_action(sp, rep, bracket(x, y));
    REQUIRE((dx * dy - dy * dx - db).norm() < 1e-9);
    // Group action of exp matches exp of the algebra action.
    const MatrixXd gx = rep_group_action(sp, rep, x.exp());
    REQUIRE((gx - dx.exp()).norm() < 1e-9 * std::max(1.0, gx.norm()));
  }
}

TEST_CASE("unknown space name is rejected") {
  REQUIRE_THROWS_AS(build_space("no_such_space"), InvalidInput);
  REQUIRE_THROWS_AS(load_space("no_such_space"), InvalidInput);
}
