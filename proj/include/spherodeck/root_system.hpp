#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spherodeck/lie_algebra.hpp"

namespace spherodeck {

using Eigen::RowVectorXd;

/// A restricted root of (g, a): the functional alpha (values on the supplied
/// a-basis), its root space and the multiplicity dim g^alpha.
struct RootDatum {
  RowVectorXd alpha;
  Subspace space;
  int multiplicity = 0;
};

struct WeylElement {
  MatrixXd matrix;   // action on a (supplied coordinates)
  MatrixXd inverse;
  std::vector<int> word;  // reduced word in simple reflections
};

/// One Weyl chamber: the positive system w(Sigma+) as root indices, and the
/// transformed simple roots cutting out the chamber.
struct Chamber {
  int weyl_index = 0;
  std::vector<int> positive;               // indices into roots
  std::vector<RowVectorXd> simple_walls;   // w(alpha_i) functionals
};

/// Standard parabolic data p_F = m_F + n_F for a subset F of simple roots,
/// relative to a chamber's positive system.
struct ParabolicData {
  std::vector<int> F;     // indices into the simple roots
  int chamber = 0;
  Subspace a_F;
  Subspace m_F;           // centralizer of a_F (contains a_F)
  Subspace n_F;
  Subspace p_F;
  Subspace m_langlands;   // m_F with a_F removed: p_F = m * a_F * n_F
};

class RestrictedRootSystem {
 public:
  const LieAlgebraPresentation* parent = nullptr;
  std::vector<MatrixXd> a_basis;  // the supplied basis of a
  Subspace a_space;
  Subspace zero_space;  // m + a
  Subspace m_space;     // zero_space with a removed
  std::vector<RootDatum> roots;
  std::vector<int> positive;  // indices of the positive roots
  std::vector<int> simple;    // indices of the simple roots (subset of positive)
  MatrixXd dual_basis;        // k x r, column j = H_j in supplied a-coordinates
  MatrixXd a_gram;            // Frobenius Gram of the supplied a-basis
  std::vector<WeylElement> weyl;
  std::vector<Chamber> chambers;  // one per Weyl element, same order

  int rank() const { return static_cast<int>(simple.size()); }
  int a_dim() const { return static_cast<int>(a_basis.size()); }

  /// Supplied-basis coordinates of an element of a.
  VectorXd a_coords(const MatrixXd& x) const {
    VectorXd c = a_coord_map_ * parent->coords_of(x);
    return c;
  }

  MatrixXd a_matrix(const VectorXd& coords) const {
    MatrixXd m = MatrixXd::Zero(parent->ambient_size(), parent->ambient_size());
    for (int i = 0; i < a_dim(); ++i) m += coords(i) * a_basis[i];
    return m;
  }

  double eval(const RowVectorXd& functional, const MatrixXd& x) const {
    return functional.dot(a_coords(x).transpose());
  }

  const RowVectorXd& simple_root(int j) const { return roots[simple[j]].alpha; }

  MatrixXd dual_basis_matrix(int j) const { return a_matrix(dual_basis.col(j)); }

  void set_coord_map(MatrixXd m) { a_coord_map_ = std::move(m); }

 private:
  MatrixXd a_coord_map_;  // supplied coords from ortho coords
};

namespace detail {

inline std::vector<std::vector<int>> cluster_sorted(const VectorXd& vals, double tol) {
  std::vector<int> idx(vals.size());
  for (int i = 0; i < vals.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals(a) < vals(b); });
  std::vector<std::vector<int>> groups;
  for (int i : idx) {
    if (groups.empty() || vals(i) - vals(groups.back().back()) > tol)
      groups.push_back({i});
    else
      groups.back().push_back(i);
  }
  return groups;
}

inline bool words_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

/// Simultaneously diagonalizes ad(a) on g and groups the joint eigenvalue
/// functionals into restricted roots. The positive system is selected by the
/// deterministic regular element with coefficients pi^i over the supplied
/// a-basis.
inline RestrictedRootSystem compute_roots(const LieAlgebraPresentation& g,
                                          const std::vector<MatrixXd>& a_basis,
                                          int weyl_bound = 100000) {
  if (a_basis.empty()) throw InvalidInput("compute_roots: empty a-basis");
  const int d = g.dim();
  const int k = static_cast<int>(a_basis.size());

  RestrictedRootSystem rs;
  rs.parent = &g;
  rs.a_basis = a_basis;
  rs.a_space = Subspace::from_matrices(g, a_basis);
  if (rs.a_space.dim() != k) throw InvalidInput("compute_roots: a-basis is dependent");

  for (int i = 0; i < k; ++i) {
    if ((a_basis[i] - a_basis[i].transpose()).norm() > 1e-9 * std::max(1.0, a_basis[i].norm()))
      throw InvalidInput("compute_roots: a-basis element not in s (not symmetric)");
    for (int j = i + 1; j < k; ++j)
      if (bracket(a_basis[i], a_basis[j]).norm() > 1e-9)
        throw InvalidInput("compute_roots: a is not abelian");
  }

  // Coordinates over the supplied basis from orthonormal algebra coordinates.
  MatrixXd c(d, k);
  for (int j = 0; j < k; ++j) c.col(j) = g.coords_of(a_basis[j]);
  rs.set_coord_map((c.transpose() * c).ldlt().solve(MatrixXd(c.transpose())));
  rs.a_gram.resize(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) rs.a_gram(i, j) = (a_basis[i] * a_basis[j]).trace();

  // ad(a) is a commuting family of symmetric operators on orthonormal
  // coordinates; a generic combination separates the joint eigenspaces.
  std::vector<MatrixXd> ad_ops;
  ad_ops.reserve(k);
  for (int i = 0; i < k; ++i) {
    MatrixXd a = g.ad_operator(a_basis[i]);
    if ((a - a.transpose()).norm() > 1e-7 * std::max(1.0, a.norm()))
      throw NotSplitStructure("compute_roots: ad(a) not symmetric on the algebra");
    ad_ops.push_back(0.5 * (a + a.transpose()));
  }
  MatrixXd generic = MatrixXd::Zero(d, d);
  double w = 1.0;
  for (int i = 0; i < k; ++i) {
    w *= std::numbers::pi;
    generic += w * ad_ops[i];
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(generic);
  const double cluster_tol = 1e-6 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const auto groups = detail::cluster_sorted(es.eigenvalues(), cluster_tol);

  int covered = 0;
  for (const auto& grp : groups) {
    MatrixXd v(d, static_cast<int>(grp.size()));
    for (int j = 0; j < static_cast<int>(grp.size()); ++j) v.col(j) = es.eigenvectors().col(grp[j]);
    RowVectorXd alpha(k);
    for (int i = 0; i < k; ++i) {
      alpha(i) = (v.transpose() * ad_ops[i] * v).trace() / static_cast<double>(grp.size());
      if ((ad_ops[i] * v - alpha(i) * v).norm() >
          tol::tau_root * std::sqrt(static_cast<double>(grp.size())) * 10)
        throw NotSplitStructure("compute_roots: joint eigenspace residual too large");
    }
    covered += static_cast<int>(grp.size());
    if (alpha.cwiseAbs().maxCoeff() <= tol::tau_root) {
      rs.zero_space = (rs.zero_space.parent() == nullptr)
                          ? Subspace(&g, orth(v))
                          : subspace_sum(rs.zero_space, Subspace(&g, orth(v)));
    } else {
      RootDatum rd;
      rd.alpha = alpha;
      rd.space = Subspace(&g, orth(v));
      rd.multiplicity = rd.space.dim();
      // Merge with an existing equal functional (generic eigenvalues can
      // split a root space only if the functionals coincide).
      bool merged = false;
      for (auto& r : rs.roots)
        if ((r.alpha - rd.alpha).cwiseAbs().maxCoeff() <= tol::tau_root) {
          r.space = subspace_sum(r.space, rd.space);
          r.multiplicity = r.space.dim();
          merged = true;
          break;
        }
      if (!merged) rs.roots.push_back(std::move(rd));
    }
  }
  if (covered != d) throw NotSplitStructure("compute_roots: eigenspaces do not fill the algebra");
  if (rs.zero_space.parent() == nullptr)
    throw NotSplitStructure("compute_roots: a does not centralize itself");
  rs.m_space = complement_within(rs.zero_space, rs.a_space);

  // Positive system from the deterministic regular element.
  VectorXd reg(k);
  double piw = 1.0;
  for (int i = 0; i < k; ++i) {
    piw *= std::numbers::pi;
    reg(i) = piw;
  }
  for (int i = 0; i < static_cast<int>(rs.roots.size()); ++i) {
    const double val = rs.roots[i].alpha.dot(reg.transpose());
    if (std::abs(val) < 1e-8)
      throw NotSplitStructure("compute_roots: regular element vanishes on a root");
    if (val > 0) rs.positive.push_back(i);
  }

  // Simple roots: positive roots that are not sums of two positive roots.
  for (int i : rs.positive) {
    bool is_sum = false;
    for (int p : rs.positive) {
      for (int q : rs.positive) {
        if ((rs.roots[p].alpha + rs.roots[q].alpha - rs.roots[i].alpha).cwiseAbs().maxCoeff() <=
            tol::tau_root) {
          is_sum = true;
          break;
        }
      }
      if (is_sum) break;
    }
    if (!is_sum) rs.simple.push_back(i);
  }
  const int r = rs.rank();
  if (r == 0 && !rs.roots.empty())
    throw NotSplitStructure("compute_roots: no simple roots found");

  // Every positive root must be a nonnegative integer combination of Pi.
  if (r > 0) {
    MatrixXd smat(r, k);
    for (int j = 0; j < r; ++j) smat.row(j) = rs.roots[rs.simple[j]].alpha;
    for (int i : rs.positive) {
      VectorXd coeff = (smat * smat.transpose())
                           .ldlt()
                           .solve(smat * rs.roots[i].alpha.transpose());
      if ((rs.roots[i].alpha - (coeff.transpose() * smat)).cwiseAbs().maxCoeff() > tol::tau_root)
        throw NotSplitStructure("compute_roots: positive root outside the simple-root span");
      for (int j = 0; j < r; ++j) {
        const double rounded = std::round(coeff(j));
        if (std::abs(coeff(j) - rounded) > 1e-6 || rounded < -tol::tau_root)
          throw NotSplitStructure("compute_roots: non-integral simple-root coefficients");
      }
    }

    // Dual basis H_j with alpha_i(H_j) = delta_ij, minimal norm in the
    // Frobenius metric (fixes H_j inside the span of the coroots).
    MatrixXd gi = rs.a_gram.ldlt().solve(MatrixXd::Identity(k, k));
    MatrixXd m = smat * gi * smat.transpose();  // r x r
    rs.dual_basis = gi * smat.transpose() * m.ldlt().solve(MatrixXd::Identity(r, r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const double want = (i == j) ? 1.0 : 0.0;
        if (std::abs(smat.row(i).dot(rs.dual_basis.col(j).transpose()) - want) > tol::tau_root)
          throw NotSplitStructure("compute_roots: dual basis construction failed");
      }
  } else {
    rs.dual_basis = MatrixXd(k, 0);
  }

  // Weyl group: closure of the simple reflections acting on a.
  {
    MatrixXd gi = rs.a_gram.ldlt().solve(MatrixXd::Identity(k, k));
    std::vector<MatrixXd> gens;
    for (int j = 0; j < r; ++j) {
      const RowVectorXd& al = rs.roots[rs.simple[j]].alpha;
      VectorXd t = gi * al.transpose();
      gens.push_back(MatrixXd::Identity(k, k) - 2.0 / al.dot(t.transpose()) * t * al);
    }
    auto find = [&](const MatrixXd& m) -> int {
      for (int i = 0; i < static_cast<int>(rs.weyl.size()); ++i)
        if ((rs.weyl[i].matrix - m).cwiseAbs().maxCoeff() < 1e-8) return i;
      return -1;
    };
    rs.weyl.push_back({MatrixXd::Identity(k, k), MatrixXd::Identity(k, k), {}});
    std::size_t head = 0;
    while (head < rs.weyl.size()) {
      const WeylElement cur = rs.weyl[head++];
      for (int j = 0; j < r; ++j) {
        MatrixXd nm = cur.matrix * gens[j];
        if (find(nm) >= 0) continue;
        std::vector<int> word = cur.word;
        word.push_back(j);
        rs.weyl.push_back({nm, nm.inverse(), std::move(word)});
        if (rs.weyl.size() > static_cast<std::size_t>(weyl_bound))
          throw ResourceLimit("Weyl group enumeration exceeded bound");
      }
    }
    std::sort(rs.weyl.begin(), rs.weyl.end(),
              [](const WeylElement& a, const WeylElement& b) {
                return detail::words_less(a.word, b.word);
              });
  }

  // Chambers: transported positive systems, one per Weyl element.
  for (int wi = 0; wi < static_cast<int>(rs.weyl.size()); ++wi) {
    Chamber ch;
    ch.weyl_index = wi;
    for (int i : rs.positive) {
      const RowVectorXd moved = rs.roots[i].alpha * rs.weyl[wi].inverse;
      int found = -1;
      for (int t = 0; t < static_cast<int>(rs.roots.size()); ++t)
        if ((rs.roots[t].alpha - moved).cwiseAbs().maxCoeff() <= tol::tau_root) {
          found = t;
          break;
        }
      if (found < 0)
        throw NotSplitStructure("compute_roots: Weyl action does not permute the roots");
      ch.positive.push_back(found);
    }
    std::sort(ch.positive.begin(), ch.positive.end());
    for (int j = 0; j < r; ++j)
      ch.simple_walls.push_back(rs.roots[rs.simple[j]].alpha * rs.weyl[wi].inverse);
    rs.chambers.push_back(std::move(ch));
  }
  return rs;
}

/// p_F relative to a chamber's positive system (reference chamber = 0).
inline ParabolicData standard_parabolic(const RestrictedRootSystem& rs,
                                        const std::vector<int>& F, int chamber = 0) {
  const LieAlgebraPresentation& g = *rs.parent;
  const Chamber& ch = rs.chambers.at(chamber);
  const int k = rs.a_dim();
  ParabolicData pd;
  pd.F = F;
  pd.chamber = chamber;

  // a_F: joint kernel of the chamber's F-walls inside a.
  MatrixXd walls(static_cast<int>(F.size()), k);
  for (int i = 0; i < static_cast<int>(F.size()); ++i) walls.row(i) = ch.simple_walls.at(F[i]);
  MatrixXd kern = (F.empty()) ? MatrixXd::Identity(k, k) : nullspace(walls);
  std::vector<MatrixXd> a_f_mats;
  for (int j = 0; j < kern.cols(); ++j) a_f_mats.push_back(rs.a_matrix(kern.col(j)));
  pd.a_F = a_f_mats.empty() ? Subspace::zero(g) : Subspace::from_matrices(g, a_f_mats);

  // m_F: centralizer of a_F = zero space plus the roots vanishing on a_F.
  pd.m_F = rs.zero_space;
  Subspace n_acc = Subspace::zero(g);
  for (int idx = 0; idx < static_cast<int>(rs.roots.size()); ++idx) {
    const RootDatum& rd = rs.roots[idx];
    bool vanishes = true;
    for (int j = 0; j < kern.cols(); ++j)
      if (std::abs(rd.alpha.dot(kern.col(j).transpose())) > tol::tau_root) {
        vanishes = false;
        break;
      }
    if (vanishes) pd.m_F = subspace_sum(pd.m_F, rd.space);
  }
  for (int idx : ch.positive) {
    const RootDatum& rd = rs.roots[idx];
    bool vanishes = true;
    for (int j = 0; j < kern.cols(); ++j)
      if (std::abs(rd.alpha.dot(kern.col(j).transpose())) > tol::tau_root) {
        vanishes = false;
        break;
      }
    if (!vanishes) n_acc = subspace_sum(n_acc, rd.space);
  }
  pd.n_F = n_acc;
  pd.p_F = subspace_sum(pd.m_F, pd.n_F);
  pd.m_langlands = complement_within(pd.m_F, pd.a_F);
  return pd;
}

/// One minimal parabolic per chamber, ordered by (word length, lex word).
inline std::vector<ParabolicData> enumerate_minimal_parabolics(const RestrictedRootSystem& rs) {
  std::vector<ParabolicData> out;
  out.reserve(rs.chambers.size());
  for (int c = 0; c < static_cast<int>(rs.chambers.size()); ++c)
    out.push_back(standard_parabolic(rs, {}, c));
  return out;
}

struct ChamberLocation {
  int chamber = 0;
  VectorXd dominant;       // w^{-1} x in supplied a-coordinates
  std::vector<int> word;   // word of the Weyl element mapping x to dominant
};

/// Finds a chamber whose closure contains x; ties on walls resolve to the
/// lexicographically smallest Weyl word (chambers are stored in that order).
inline ChamberLocation chamber_of(const RestrictedRootSystem& rs, const MatrixXd& x) {
  const VectorXd cx = rs.a_coords(x);
  for (int c = 0; c < static_cast<int>(rs.chambers.size()); ++c) {
    bool inside = true;
    for (const auto& wall : rs.chambers[c].simple_walls)
      if (wall.dot(cx.transpose()) < -tol::tau_root) {
        inside = false;
        break;
      }
    if (inside) {
      ChamberLocation loc;
      loc.chamber = c;
      loc.dominant = rs.weyl[rs.chambers[c].weyl_index].inverse * cx;
      loc.word = rs.weyl[rs.chambers[c].weyl_index].word;
      std::reverse(loc.word.begin(), loc.word.end());
      return loc;
    }
  }
  throw NotSplitStructure("chamber_of: no chamber closure contains the element");
}

/// All chambers whose closure contains x (boundary points lie in several).
inline std::vector<int> chambers_containing(const RestrictedRootSystem& rs, const MatrixXd& x) {
  const VectorXd cx = rs.a_coords(x);
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(rs.chambers.size()); ++c) {
    bool inside = true;
    for (const auto& wall : rs.chambers[c].simple_walls)
      if (wall.dot(cx.transpose()) < -tol::tau_root) {
        inside = false;
        break;
      }
    if (inside) out.push_back(c);
  }
  return out;
}

}  // namespace spherodeck
