#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spherodeck/root_system.hpp"

namespace spherodeck {

using json = nlohmann::ordered_json;

enum class BlockFamily { SL, GL, Sp, OForm };

/// One diagonal block of the ambient realization, with its defining variety.
struct GroupBlock {
  int offset = 0;
  int size = 0;
  BlockFamily family = BlockFamily::GL;
  MatrixXd form;  // bilinear form preserved by Sp / OForm blocks
};

enum class DecompositionKind { GroupKak, TripleClosedForm, TripleReduced, GrossPrasad, SpChain, Generic };

enum class RepKind { Conjugation, StdTwist, DetTwist };

/// A finite-dimensional H-spherical representation in one of three shipped
/// realizations. The action is exact for arbitrary group elements:
///   Conjugation: T -> g_left T g_right^{-1} on n x n matrices
///   StdTwist:    v -> prod_b det(g_b)^{p_b} * g_factor v
///   DetTwist:    v -> prod_b det(g_b)^{p_b} * v
struct SphericalRepData {
  std::string name;
  RepKind kind = RepKind::Conjugation;
  int left = 0, right = 0;    // Conjugation factors
  int factor = 0;             // StdTwist factor
  std::vector<int> det_powers;
  VectorXd u_H;
  RowVectorXd lambda;  // highest a-weight w.r.t. the reference chamber
};

struct ExpectedFlag {
  std::optional<bool> value;  // empty = unverified
  std::string source;         // "literature" | "construction" | "numerical" | "unverified"
  std::string note;
};

struct ExponentPreset {
  std::string name;
  std::vector<Eigen::VectorXcd> exponents;  // values on the dual basis H_j
  std::vector<int> face_multiplicities;
  std::string note;
};

struct SpaceDefinition {
  std::string name;
  std::shared_ptr<LieAlgebraPresentation> g;
  std::vector<MatrixXd> h_basis;
  std::vector<MatrixXd> a_basis;
  std::vector<GroupBlock> blocks;
  std::vector<MatrixXd> k_component_reps;
  std::vector<MatrixXd> h_component_reps;
  std::vector<SphericalRepData> spherical_reps;
  std::vector<ExponentPreset> exponent_presets;
  std::map<std::string, ExpectedFlag> expected;
  DecompositionKind decomposition = DecompositionKind::Generic;
  bool experimental = false;

  // Derived at load.
  Subspace h;
  CartanDecomposition cartan;
  RestrictedRootSystem roots;
  Subspace q;        // kappa-complement of h
  Subspace s_cap_q;  // Mostow slice
  Subspace h_cap_s;
  Subspace h_cap_k;

  int ambient() const { return g->ambient_size(); }

  MatrixXd block_of(const MatrixXd& m, int b) const {
    return m.block(blocks[b].offset, blocks[b].offset, blocks[b].size, blocks[b].size);
  }

  MatrixXd with_block(MatrixXd m, int b, const MatrixXd& val) const {
    m.block(blocks[b].offset, blocks[b].offset, blocks[b].size, blocks[b].size) = val;
    return m;
  }

  MatrixXd embed_blocks(const std::vector<MatrixXd>& vals) const {
    MatrixXd m = MatrixXd::Identity(ambient(), ambient());
    for (std::size_t b = 0; b < blocks.size(); ++b)
      m.block(blocks[b].offset, blocks[b].offset, blocks[b].size, blocks[b].size) = vals[b];
    return m;
  }

  /// Distance of a matrix from the defining variety of the group.
  double variety_residual(const MatrixXd& m) const {
    double res = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const MatrixXd blk = block_of(m, b);
      switch (blocks[b].family) {
        case BlockFamily::SL:
          res = std::max(res, std::abs(blk.determinant() - 1.0));
          break;
        case BlockFamily::GL:
          if (std::abs(blk.determinant()) < tol::tau_def) res = std::max(res, 1.0);
          break;
        case BlockFamily::Sp:
        case BlockFamily::OForm:
          res = std::max(res, (blk.transpose() * blocks[b].form * blk - blocks[b].form).norm());
          break;
      }
      // Off-block entries must stay zero.
    }
    MatrixXd mask = m;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      mask.block(blocks[b].offset, blocks[b].offset, blocks[b].size, blocks[b].size).setZero();
    res = std::max(res, mask.norm());
    return res;
  }
};

// ---------------------------------------------------------------------------
// Spherical representation action
// ---------------------------------------------------------------------------

inline int rep_dim(const SpaceDefinition& sp, const SphericalRepData& r) {
  switch (r.kind) {
    case RepKind::Conjugation:
      return sp.blocks[r.left].size * sp.blocks[r.right].size;
    case RepKind::StdTwist:
      return sp.blocks[r.factor].size;
    case RepKind::DetTwist:
      return 1;
  }
  return 0;
}

/// pi(g) as a dim x dim matrix, exact for any group element.
inline MatrixXd rep_group_action(const SpaceDefinition& sp, const SphericalRepData& r,
                                 const MatrixXd& g) {
  switch (r.kind) {
    case RepKind::Conjugation: {
      const MatrixXd gl = sp.block_of(g, r.left);
      const MatrixXd gri = sp.block_of(g, r.right).inverse();
      const int nl = gl.rows(), nr = gri.rows();
      MatrixXd out(nl * nr, nl * nr);
      // vec(gl T gr^{-1}) = (gr^{-T} kron gl) vec(T)
      for (int c = 0; c < nr; ++c)
        for (int rr = 0; rr < nr; ++rr)
          out.block(rr * nl, c * nl, nl, nl) = gri(c, rr) * gl;
      return out;
    }
    case RepKind::StdTwist: {
      double det = 1.0;
      for (std::size_t b = 0; b < sp.blocks.size(); ++b)
        det *= std::pow(sp.block_of(g, static_cast<int>(b)).determinant(),
                        b < r.det_powers.size() ? r.det_powers[b] : 0);
      return det * sp.block_of(g, r.factor);
    }
    case RepKind::DetTwist: {
      double det = 1.0;
      for (std::size_t b = 0; b < sp.blocks.size(); ++b)
        det *= std::pow(sp.block_of(g, static_cast<int>(b)).determinant(),
                        b < r.det_powers.size() ? r.det_powers[b] : 0);
      return MatrixXd::Constant(1, 1, det);
    }
  }
  return {};
}

/// dpi(X) for an algebra element X (ambient matrix).
inline MatrixXd rep_algebra_action(const SpaceDefinition& sp, const SphericalRepData& r,
                                   const MatrixXd& x) {
  switch (r.kind) {
    case RepKind::Conjugation: {
      const MatrixXd xl = sp.block_of(x, r.left);
      const MatrixXd xr = sp.block_of(x, r.right);
      const int nl = xl.rows(), nr = xr.rows();
      MatrixXd out = MatrixXd::Zero(nl * nr, nl * nr);
      for (int c = 0; c < nr; ++c) {
        out.block(c * nl, c * nl, nl, nl) += xl;
        for (int rr = 0; rr < nr; ++rr)
          out.block(rr * nl, c * nl, nl, nl) -= xr(c, rr) * MatrixXd::Identity(nl, nl);
      }
      return out;
    }
    case RepKind::StdTwist: {
      double tr = 0.0;
      for (std::size_t b = 0; b < sp.blocks.size(); ++b)
        tr += (b < r.det_powers.size() ? r.det_powers[b] : 0) *
              sp.block_of(x, static_cast<int>(b)).trace();
      const MatrixXd xf = sp.block_of(x, r.factor);
      return xf + tr * MatrixXd::Identity(xf.rows(), xf.cols());
    }
    case RepKind::DetTwist: {
      double tr = 0.0;
      for (std::size_t b = 0; b < sp.blocks.size(); ++b)
        tr += (b < r.det_powers.size() ? r.det_powers[b] : 0) *
              sp.block_of(x, static_cast<int>(b)).trace();
      return MatrixXd::Constant(1, 1, tr);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Finalization: derived data plus eager validation
// ---------------------------------------------------------------------------

namespace detail {

/// Joint a-weights of a representation, as rows, with an orthonormal weight
/// basis; weights are simultaneous eigenvalues of the commuting symmetric
/// dpi(a_i).
inline std::pair<MatrixXd, std::vector<RowVectorXd>> rep_weights(const SpaceDefinition& sp,
                                                                 const SphericalRepData& r) {
  const int k = static_cast<int>(sp.a_basis.size());
  const int dim = rep_dim(sp, r);
  std::vector<MatrixXd> ops;
  for (int i = 0; i < k; ++i) ops.push_back(rep_algebra_action(sp, r, sp.a_basis[i]));
  MatrixXd generic = MatrixXd::Zero(dim, dim);
  double w = 1.0;
  for (int i = 0; i < k; ++i) {
    w *= std::numbers::pi;
    generic += w * ops[i];
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (generic + generic.transpose()));
  std::vector<RowVectorXd> weights(dim);
  for (int c = 0; c < dim; ++c) {
    RowVectorXd mu(k);
    const VectorXd v = es.eigenvectors().col(c);
    for (int i = 0; i < k; ++i) mu(i) = v.dot(ops[i] * v);
    weights[c] = mu;
  }
  return {es.eigenvectors(), weights};
}

inline RowVectorXd highest_weight(const SpaceDefinition& sp, const SphericalRepData& r) {
  auto [vecs, weights] = rep_weights(sp, r);
  const int k = static_cast<int>(sp.a_basis.size());
  VectorXd reg(k);
  double w = 1.0;
  for (int i = 0; i < k; ++i) {
    w *= std::numbers::pi;
    reg(i) = w;
  }
  int best = 0;
  double bestval = -1e300;
  for (int c = 0; c < static_cast<int>(weights.size()); ++c) {
    const double val = weights[c].dot(reg.transpose());
    if (val > bestval) {
      bestval = val;
      best = c;
    }
  }
  return weights[best];
}

}  // namespace detail

/// Computes all derived data and validates every invariant eagerly; failures
/// are collected and reported together.
inline void finalize_space(SpaceDefinition& sp) {
  std::vector<std::string> fails;
  const LieAlgebraPresentation& g = *sp.g;

  for (auto& f : g.invariant_failures()) fails.push_back(f);

  // Blocks partition the ambient space.
  {
    int cursor = 0;
    for (const auto& b : sp.blocks) {
      if (b.offset != cursor) fails.push_back(sp.name + ": blocks do not tile the ambient space");
      cursor += b.size;
    }
    if (cursor != g.ambient_size()) fails.push_back(sp.name + ": block sizes do not sum to n");
  }

  try {
    sp.h = Subspace::from_matrices(g, sp.h_basis);
  } catch (const Error& e) {
    fails.push_back(e.what());
  }
  if (sp.h.parent() != nullptr) {
    for (std::size_t i = 0; i < sp.h_basis.size(); ++i) {
      if (!sp.h.contains_matrix(g.theta(sp.h_basis[i])))
        fails.push_back(sp.name + ": h is not theta-stable");
      for (std::size_t j = i + 1; j < sp.h_basis.size(); ++j)
        if (!sp.h.contains_matrix(bracket(sp.h_basis[i], sp.h_basis[j])))
          fails.push_back(sp.name + ": h is not a subalgebra");
    }
    // kappa nondegenerate on h (h reductive in g).
    Eigen::SelfAdjointEigenSolver<MatrixXd> eh(
        MatrixXd(sp.h.frame().transpose() * g.kappa_gram() * sp.h.frame()));
    if (sp.h.dim() > 0 && eh.eigenvalues().cwiseAbs().minCoeff() < tol::tau_def)
      fails.push_back(sp.name + ": trace form degenerate on h");
  }

  try {
    sp.cartan = cartan_decompose(g);
  } catch (const Error& e) {
    fails.push_back(e.what());
  }

  try {
    sp.roots = compute_roots(g, sp.a_basis);
    // Certification: a is maximal abelian in s (nullspace computation).
    if (sp.cartan.s_part.parent() != nullptr) {
      const MatrixXd& sframe = sp.cartan.s_part.frame();
      MatrixXd stacked(g.dim() * static_cast<int>(sp.a_basis.size()), sframe.cols());
      for (std::size_t i = 0; i < sp.a_basis.size(); ++i)
        stacked.middleRows(static_cast<int>(i) * g.dim(), g.dim()) =
            g.ad_operator(sp.a_basis[i]) * sframe;
      const int central = static_cast<int>(nullspace(stacked).cols());
      if (central != static_cast<int>(sp.a_basis.size()))
        fails.push_back(sp.name + ": a is not maximal abelian in s (centralizer dimension " +
                        std::to_string(central) + ")");
    }
  } catch (const Error& e) {
    fails.push_back(e.what());
  }

  if (sp.h.parent() != nullptr && sp.cartan.s_part.parent() != nullptr) {
    sp.q = kappa_complement(g, sp.h);
    sp.s_cap_q = subspace_intersect(sp.cartan.s_part, sp.q);
    sp.h_cap_s = subspace_intersect(sp.h, sp.cartan.s_part);
    sp.h_cap_k = subspace_intersect(sp.h, sp.cartan.k_part);
    if (sp.q.dim() + sp.h.dim() != g.dim())
      fails.push_back(sp.name + ": g is not h + q (trace form degenerate on h?)");
  }

  for (auto& r : sp.spherical_reps) {
    const int dim = rep_dim(sp, r);
    if (r.u_H.size() != dim) {
      fails.push_back(sp.name + ": rep " + r.name + " has u_H of wrong dimension");
      continue;
    }
    for (const auto& hx : sp.h_basis)
      if ((rep_algebra_action(sp, r, hx) * r.u_H).norm() > 1e-8 * std::max(1.0, r.u_H.norm()))
        fails.push_back(sp.name + ": rep " + r.name + " u_H is not h-fixed");
    // Compatibility of the inner product: <X u, v> = <u, -theta(X) v>.
    for (const auto& bx : g.basis()) {
      const MatrixXd dx = rep_algebra_action(sp, r, bx);
      const MatrixXd dth = rep_algebra_action(sp, r, g.theta(bx));
      if ((dx.transpose() + dth).norm() > 1e-8 * std::max(1.0, dx.norm())) {
        fails.push_back(sp.name + ": rep " + r.name + " inner product is not K-compatible");
        break;
      }
    }
    const RowVectorXd hw = detail::highest_weight(sp, r);
    if (r.lambda.size() == 0)
      r.lambda = hw;
    else if ((r.lambda - hw).cwiseAbs().maxCoeff() > 1e-7)
      fails.push_back(sp.name + ": rep " + r.name + " declared highest weight mismatch");
  }

  for (const auto& p : sp.exponent_presets) {
    if (p.exponents.empty()) fails.push_back(sp.name + ": empty exponent preset " + p.name);
    for (const auto& e : p.exponents)
      if (e.size() != static_cast<int>(p.face_multiplicities.size()))
        fails.push_back(sp.name + ": exponent preset " + p.name + " rank mismatch");
  }

  if (!fails.empty()) throw ValidationError(fails);
}

// ---------------------------------------------------------------------------
// Built-in entries
// ---------------------------------------------------------------------------

namespace build {

inline MatrixXd unit(int n, int i, int j) {
  MatrixXd m = MatrixXd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline MatrixXd embed(const MatrixXd& m, int offset, int n) {
  MatrixXd out = MatrixXd::Zero(n, n);
  out.block(offset, offset, m.rows(), m.cols()) = m;
  return out;
}

inline std::vector<MatrixXd> sl2() {
  MatrixXd h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  return {h, e, f};
}

inline MatrixXd sl2_h() { return sl2()[0]; }
inline MatrixXd sl2_b() {
  MatrixXd b(2, 2);
  b << 0, 1, 1, 0;
  return b;
}

inline std::vector<MatrixXd> gl(int n) {
  std::vector<MatrixXd> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(unit(n, i, j));
  return out;
}

inline MatrixXd sp2_elem(const MatrixXd& x1, const MatrixXd& x2, const MatrixXd& x3) {
  MatrixXd out = MatrixXd::Zero(4, 4);
  out.block(0, 0, 2, 2) = x1;
  out.block(0, 2, 2, 2) = x2;
  out.block(2, 2, 2, 2) = -x1.transpose();
  out.block(2, 0, 2, 2) = x3;
  return out;
}

inline std::vector<MatrixXd> sp2() {
  std::vector<MatrixXd> out;
  const MatrixXd z = MatrixXd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.push_back(sp2_elem(unit(2, i, j), z, z));
  std::vector<MatrixXd> sym = {unit(2, 0, 0), unit(2, 0, 1) + unit(2, 1, 0), unit(2, 1, 1)};
  for (const auto& s : sym) out.push_back(sp2_elem(z, s, z));
  for (const auto& s : sym) out.push_back(sp2_elem(z, z, s));
  return out;
}

inline MatrixXd symplectic_form(int n) {
  MatrixXd j = MatrixXd::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = MatrixXd::Identity(n, n);
  j.block(n, 0, n, n) = -MatrixXd::Identity(n, n);
  return j;
}

inline SpaceDefinition group_sl2() {
  SpaceDefinition sp;
  sp.name = "group_sl2";
  std::vector<MatrixXd> basis;
  for (int f = 0; f < 2; ++f)
    for (const auto& b : sl2()) basis.push_back(embed(b, 2 * f, 4));
  sp.g = std::make_shared<LieAlgebraPresentation>("sl2 x sl2", 4, basis);
  for (const auto& b : sl2()) sp.h_basis.push_back(embed(b, 0, 4) + embed(b, 2, 4));
  sp.a_basis = {embed(sl2_h(), 0, 4), embed(sl2_h(), 2, 4)};
  sp.blocks = {{0, 2, BlockFamily::SL, {}}, {2, 2, BlockFamily::SL, {}}};
  sp.k_component_reps = {MatrixXd::Identity(4, 4)};
  sp.h_component_reps = {MatrixXd::Identity(4, 4)};
  sp.decomposition = DecompositionKind::GroupKak;
  SphericalRepData rep;
  rep.name = "std_x_std_dual";
  rep.kind = RepKind::Conjugation;
  rep.left = 0;
  rep.right = 1;
  rep.u_H = vec(MatrixXd::Identity(2, 2));
  sp.spherical_reps.push_back(rep);
  ExponentPreset p0;
  p0.name = "pseries_lambda0";
  p0.exponents = {Eigen::VectorXcd::Constant(1, std::complex<double>(1.0, 0.0))};
  p0.face_multiplicities = {2};
  p0.note = "spherical principal series at the Weyl point; fitted from the t*exp(-t) profile";
  ExponentPreset ph;
  ph.name = "pseries_lambda_half";
  ph.exponents = {Eigen::VectorXcd::Constant(1, std::complex<double>(0.5, 0.0)),
                  Eigen::VectorXcd::Constant(1, std::complex<double>(1.5, 0.0))};
  ph.face_multiplicities = {1};
  ph.note = "spherical principal series, regular real parameter 1/2";
  sp.exponent_presets = {p0, ph};
  sp.expected["spherical"] = {true, "literature", "symmetric space"};
  sp.expected["pure"] = {false, "construction", "open minimal parabolics meet the diagonal in a torus"};
  sp.expected["polar_constructive"] = {true, "construction", "KAK of the first-factor transporter"};
  sp.expected["strongly_spherical_evidence"] = {true, "literature", "symmetric spaces have full chamber coverage"};
  finalize_space(sp);
  return sp;
}

inline SpaceDefinition triple_sl2(bool generic) {
  SpaceDefinition sp;
  sp.name = generic ? "triple_sl2_generic" : "triple_sl2_degenerate";
  std::vector<MatrixXd> basis;
  for (int f = 0; f < 3; ++f)
    for (const auto& b : sl2()) basis.push_back(embed(b, 2 * f, 6));
  sp.g = std::make_shared<LieAlgebraPresentation>("sl2 x sl2 x sl2", 6, basis);
  for (const auto& b : sl2())
    sp.h_basis.push_back(embed(b, 0, 6) + embed(b, 2, 6) + embed(b, 4, 6));
  if (generic) {
    MatrixXd third(2, 2);
    third << 3.0 / 5.0, 4.0 / 5.0, 4.0 / 5.0, -3.0 / 5.0;
    sp.a_basis = {embed(sl2_h(), 0, 6), embed(sl2_b(), 2, 6), embed(third, 4, 6)};
    sp.decomposition = DecompositionKind::TripleReduced;
  } else {
    sp.a_basis = {embed(sl2_h(), 0, 6), embed(sl2_h(), 2, 6), embed(sl2_b(), 4, 6)};
    sp.decomposition = DecompositionKind::TripleClosedForm;
  }
  sp.blocks = {{0, 2, BlockFamily::SL, {}}, {2, 2, BlockFamily::SL, {}}, {4, 2, BlockFamily::SL, {}}};
  sp.k_component_reps = {MatrixXd::Identity(6, 6)};
  sp.h_component_reps = {MatrixXd::Identity(6, 6)};
  const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  const char* names[] = {"std_std_1", "std_1_std", "1_std_std"};
  for (int i = 0; i < 3; ++i) {
    SphericalRepData rep;
    rep.name = names[i];
    rep.kind = RepKind::Conjugation;
    rep.left = pairs[i].first;
    rep.right = pairs[i].second;
    rep.u_H = vec(MatrixXd::Identity(2, 2));
    sp.spherical_reps.push_back(rep);
  }
  sp.expected["spherical"] = {true, "literature", "triple space of a rank-one factor"};
  sp.expected["pure"] = {true, "literature", "pure for the 2- and 3-dimensional hyperbolic factors"};
  sp.expected["polar_constructive"] = {true, "literature", "product decomposition through the symmetric pair"};
  if (generic)
    sp.expected["strongly_spherical_evidence"] = {true, "literature", "all parabolics over pairwise-distinct directions are open"};
  else
    sp.expected["strongly_spherical_evidence"] = {false, "literature", "chamber coverage fails for this torus choice"};
  finalize_space(sp);
  return sp;
}

inline SpaceDefinition gp_gl2_gl1() {
  SpaceDefinition sp;
  sp.name = "gp_gl2_gl1";
  std::vector<MatrixXd> basis;
  for (const auto& b : gl(2)) basis.push_back(embed(b, 0, 3));
  basis.push_back(unit(3, 2, 2));
  sp.g = std::make_shared<LieAlgebraPresentation>("gl2 + gl1", 3, basis);
  sp.h_basis = {unit(3, 1, 1) + unit(3, 2, 2)};  // diag gl(1), lower-right embedding
  sp.a_basis = {embed(MatrixXd::Identity(2, 2), 0, 3), embed(sl2_b(), 0, 3), unit(3, 2, 2)};
  sp.blocks = {{0, 2, BlockFamily::GL, {}}, {2, 1, BlockFamily::GL, {}}};
  MatrixXd flip2 = MatrixXd::Identity(3, 3);
  flip2(0, 0) = -1;
  MatrixXd flip1 = MatrixXd::Identity(3, 3);
  flip1(2, 2) = -1;
  sp.k_component_reps = {MatrixXd::Identity(3, 3), flip2, flip1, flip2 * flip1};
  MatrixXd hflip = MatrixXd::Identity(3, 3);
  hflip(1, 1) = hflip(2, 2) = -1;
  sp.h_component_reps = {MatrixXd::Identity(3, 3), hflip};
  sp.decomposition = DecompositionKind::GrossPrasad;
  {
    SphericalRepData rep;
    rep.name = "std2";
    rep.kind = RepKind::StdTwist;
    rep.factor = 0;
    rep.det_powers = {0, 0};
    rep.u_H = VectorXd::Zero(2);
    rep.u_H(0) = 1.0;
    sp.spherical_reps.push_back(rep);
  }
  {
    SphericalRepData rep;
    rep.name = "std2_detinv";
    rep.kind = RepKind::StdTwist;
    rep.factor = 0;
    rep.det_powers = {0, -1};
    rep.u_H = VectorXd::Zero(2);
    rep.u_H(1) = 1.0;
    sp.spherical_reps.push_back(rep);
  }
  {
    SphericalRepData rep;
    rep.name = "det2_detinv";
    rep.kind = RepKind::DetTwist;
    rep.det_powers = {1, -1};
    rep.u_H = VectorXd::Ones(1);
    sp.spherical_reps.push_back(rep);
  }
  sp.expected["spherical"] = {true, "literature", "base-change pair GL(2) x GL(1)"};
  sp.expected["pure"] = {true, "literature", "general-linear pairs are pure"};
  sp.expected["polar_constructive"] = {true, "literature", "inductive corner-torus decomposition"};
  sp.expected["strongly_spherical_evidence"] = {true, "literature", "full coverage with the block-torus choice"};
  finalize_space(sp);
  return sp;
}

inline SpaceDefinition gp_gl3_gl2() {
  SpaceDefinition sp;
  sp.name = "gp_gl3_gl2";
  std::vector<MatrixXd> basis;
  for (const auto& b : gl(3)) basis.push_back(embed(b, 0, 5));
  for (const auto& b : gl(2)) basis.push_back(embed(b, 3, 5));
  sp.g = std::make_shared<LieAlgebraPresentation>("gl3 + gl2", 5, basis);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sp.h_basis.push_back(unit(5, 1 + i, 1 + j) + unit(5, 3 + i, 3 + j));
  sp.a_basis = {embed(MatrixXd::Identity(2, 2), 0, 5), embed(sl2_b(), 0, 5), unit(5, 2, 2),
                embed(MatrixXd::Identity(2, 2), 3, 5), embed(sl2_b(), 3, 5)};
  sp.blocks = {{0, 3, BlockFamily::GL, {}}, {3, 2, BlockFamily::GL, {}}};
  MatrixXd flip3 = MatrixXd::Identity(5, 5);
  flip3(0, 0) = -1;
  MatrixXd flip2 = MatrixXd::Identity(5, 5);
  flip2(3, 3) = -1;
  sp.k_component_reps = {MatrixXd::Identity(5, 5), flip3, flip2, flip3 * flip2};
  MatrixXd hflip = MatrixXd::Identity(5, 5);
  hflip(1, 1) = hflip(3, 3) = -1;
  sp.h_component_reps = {MatrixXd::Identity(5, 5), hflip};
  sp.decomposition = DecompositionKind::GrossPrasad;
  {
    SphericalRepData rep;
    rep.name = "std3";
    rep.kind = RepKind::StdTwist;
    rep.factor = 0;
    rep.det_powers = {0, 0};
    rep.u_H = VectorXd::Zero(3);
    rep.u_H(0) = 1.0;
    sp.spherical_reps.push_back(rep);
  }
  sp.expected["spherical"] = {true, "literature", "base-change pair GL(3) x GL(2)"};
  sp.expected["pure"] = {true, "literature", "general-linear pairs are pure"};
  sp.expected["polar_constructive"] = {true, "literature", "inductive corner-torus decomposition"};
  sp.expected["strongly_spherical_evidence"] = {std::nullopt, "unverified", "coverage reported as evidence only"};
  finalize_space(sp);
  return sp;
}

inline SpaceDefinition sp2_chain() {
  SpaceDefinition sp;
  sp.name = "sp2_chain";
  sp.g = std::make_shared<LieAlgebraPresentation>("sp2", 4, sp2());
  const MatrixXd z = MatrixXd::Zero(2, 2);
  const MatrixXd e00 = unit(2, 0, 0), e11 = unit(2, 1, 1);
  // h = sp(1) in the first corner plus u(1) in the second corner.
  sp.h_basis = {sp2_elem(e00, z, z), sp2_elem(z, e00, z), sp2_elem(z, z, e00),
                sp2_elem(z, e11, -e11)};
  sp.a_basis = {sp2_elem(MatrixXd::Identity(2, 2), z, z), sp2_elem(sl2_b(), z, z)};
  sp.blocks = {{0, 4, BlockFamily::Sp, symplectic_form(2)}};
  sp.k_component_reps = {MatrixXd::Identity(4, 4)};
  sp.h_component_reps = {MatrixXd::Identity(4, 4)};
  sp.decomposition = DecompositionKind::SpChain;
  sp.expected["spherical"] = {std::nullopt, "unverified", "reported from the computed certificate"};
  sp.expected["pure"] = {std::nullopt, "unverified", "reported from the computed certificate"};
  sp.expected["polar_constructive"] = {true, "literature", "chain through the intermediate symmetric pair"};
  sp.expected["strongly_spherical_evidence"] = {std::nullopt, "unverified", "coverage reported as evidence only"};
  finalize_space(sp);
  return sp;
}

inline SpaceDefinition gp_o12_o11() {
  SpaceDefinition sp;
  sp.name = "gp_o12_o11";
  // o(1,2) + o(1,1), forms diag(1,-1,-1) and diag(1,-1).
  const MatrixXd b01 = unit(3, 0, 1) + unit(3, 1, 0);
  const MatrixXd b02 = unit(3, 0, 2) + unit(3, 2, 0);
  const MatrixXd rot = unit(3, 1, 2) - unit(3, 2, 1);
  const MatrixXd hb = unit(2, 0, 1) + unit(2, 1, 0);
  std::vector<MatrixXd> basis = {embed(b01, 0, 5), embed(b02, 0, 5), embed(rot, 0, 5),
                                 embed(hb, 3, 5)};
  sp.g = std::make_shared<LieAlgebraPresentation>("o(1,2) + o(1,1)", 5, basis);
  sp.h_basis = {embed(b01, 0, 5) + embed(hb, 3, 5)};
  sp.a_basis = {embed(b02, 0, 5), embed(hb, 3, 5)};
  MatrixXd j3 = MatrixXd::Identity(3, 3);
  j3(1, 1) = j3(2, 2) = -1;
  MatrixXd j2 = MatrixXd::Identity(2, 2);
  j2(1, 1) = -1;
  sp.blocks = {{0, 3, BlockFamily::OForm, j3}, {3, 2, BlockFamily::OForm, j2}};
  sp.k_component_reps = {MatrixXd::Identity(5, 5)};
  sp.h_component_reps = {MatrixXd::Identity(5, 5)};
  sp.decomposition = DecompositionKind::Generic;
  sp.experimental = true;
  sp.expected["spherical"] = {std::nullopt, "unverified", "experimental entry, generic solver only"};
  sp.expected["pure"] = {std::nullopt, "unverified", "experimental entry"};
  sp.expected["polar_constructive"] = {false, "construction", "no constructive solver for this family"};
  sp.expected["strongly_spherical_evidence"] = {std::nullopt, "unverified", "coverage reported as evidence only"};
  finalize_space(sp);
  return sp;
}

}  // namespace build

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "group_sl2",    "triple_sl2_generic", "triple_sl2_degenerate", "gp_gl2_gl1",
      "gp_gl3_gl2",   "sp2_chain",          "gp_o12_o11"};
  return names;
}

inline SpaceDefinition build_space(const std::string& name) {
  if (name == "group_sl2") return build::group_sl2();
  if (name == "triple_sl2_generic") return build::triple_sl2(true);
  if (name == "triple_sl2_degenerate") return build::triple_sl2(false);
  if (name == "gp_gl2_gl1") return build::gp_gl2_gl1();
  if (name == "gp_gl3_gl2") return build::gp_gl3_gl2();
  if (name == "sp2_chain") return build::sp2_chain();
  if (name == "gp_o12_o11") return build::gp_o12_o11();
  throw InvalidInput("unknown catalog space: " + name);
}

}  // namespace spherodeck
