#pragma once

#include <optional>
#include <vector>

#include "spherodeck/rng.hpp"
#include "spherodeck/root_system.hpp"

namespace spherodeck {

struct OpennessResult {
  bool open = false;
  int dim_p_plus_h = 0;
  int dim_p_cap_h = 0;
};

/// Infinitesimal openness of PH: p + h = g (rank criterion).
inline OpennessResult test_open(const ParabolicData& p, const Subspace& h) {
  OpennessResult r;
  r.dim_p_plus_h = subspace_sum(p.p_F, h).dim();
  r.dim_p_cap_h = subspace_intersect(p.p_F, h).dim();
  r.open = (r.dim_p_plus_h == h.parent()->dim());
  return r;
}

/// Spherical pair conditions: (1) m_P ^ s inside h, (2) PH open.
inline std::pair<bool, bool> test_spherical_pair(const ParabolicData& p, const Subspace& h,
                                                 const CartanDecomposition& cd) {
  const Subspace ms = subspace_intersect(p.m_langlands, cd.s_part);
  const bool cond1 = contains(h, ms);
  const bool cond2 = test_open(p, h).open;
  return {cond1, cond2};
}

struct PerParabolicEntry {
  int chamber = 0;
  bool open = false;
  int dim_p_plus_h = 0;
  int dim_p_cap_h = 0;
};

struct SphericalPairEntry {
  std::vector<int> F;
  bool condition1 = false;  // m_P ^ s inside h (chamber independent)
  bool condition2 = false;  // some Weyl translate of p_F is open against h
};

struct SphericityCertificate {
  std::vector<PerParabolicEntry> per_parabolic;
  bool is_spherical = false;
  bool is_pure = false;
  std::vector<SphericalPairEntry> spherical_pairs;
};

/// Runs the openness test over every minimal parabolic and the spherical-pair
/// conditions over every subset F of the simple roots.
inline SphericityCertificate certify_sphericity(const RestrictedRootSystem& rs,
                                                const Subspace& h,
                                                const CartanDecomposition& cd) {
  SphericityCertificate cert;
  const auto minimal = enumerate_minimal_parabolics(rs);
  for (int c = 0; c < static_cast<int>(minimal.size()); ++c) {
    const auto r = test_open(minimal[c], h);
    cert.per_parabolic.push_back({c, r.open, r.dim_p_plus_h, r.dim_p_cap_h});
    cert.is_spherical |= r.open;
    cert.is_pure |= (r.open && r.dim_p_cap_h == 0);
  }
  const int rank = rs.rank();
  for (unsigned mask = 0; mask < (1u << rank); ++mask) {
    SphericalPairEntry e;
    for (int j = 0; j < rank; ++j)
      if (mask & (1u << j)) e.F.push_back(j);
    const auto p0 = standard_parabolic(rs, e.F, 0);
    e.condition1 = contains(h, subspace_intersect(p0.m_langlands, cd.s_part));
    for (int c = 0; c < static_cast<int>(rs.chambers.size()) && !e.condition2; ++c)
      e.condition2 = test_open(standard_parabolic(rs, e.F, c), h).open;
    cert.spherical_pairs.push_back(std::move(e));
  }
  return cert;
}

struct InteriorPointResult {
  bool found = false;
  std::optional<MatrixXd> witness;        // element X of a with a = exp(X)
  std::vector<int> limit_dims;            // dim(m^k + a + n_c + h) per chamber
  bool limit_full = false;                // some chamber reaches dim g
};

/// Default grid for the interior-point search: log-uniform points along the
/// dual-basis rays plus seeded random elements of a.
inline std::vector<MatrixXd> interior_point_grid(const RestrictedRootSystem& rs,
                                                 std::uint64_t seed, int per_ray = 32,
                                                 int random_points = 100) {
  std::vector<MatrixXd> grid;
  for (int j = 0; j < rs.dual_basis.cols(); ++j) {
    const MatrixXd hj = rs.dual_basis_matrix(j);
    for (int i = 0; i < per_ray; ++i) {
      const double t = std::pow(10.0, -2.0 + 3.0 * i / std::max(1, per_ray - 1));
      grid.push_back(t * hj);
    }
  }
  Rng rng(seed, "interior-point");
  for (int i = 0; i < random_points; ++i) {
    VectorXd c(rs.a_dim());
    for (int j = 0; j < c.size(); ++j) c(j) = 2.0 * rng.gaussian();
    grid.push_back(rs.a_matrix(c));
  }
  return grid;
}

/// Searches the grid for a with Ad(a^{-1}) k + a + h = g and reports the
/// chamber-ray limit dim(m^k + a + n + h) alongside.
inline InteriorPointResult interior_point_search(const RestrictedRootSystem& rs,
                                                 const Subspace& h,
                                                 const CartanDecomposition& cd,
                                                 const std::vector<MatrixXd>& grid) {
  if (grid.empty()) throw InvalidInput("interior_point_search: empty grid");
  const LieAlgebraPresentation& g = *rs.parent;
  InteriorPointResult res;

  // Ray limit heuristic: m ^ k + a + n_c + h, one value per chamber.
  {
    const Subspace mk = subspace_intersect(rs.m_space, cd.k_part);
    const Subspace base = subspace_sum(subspace_sum(mk, rs.a_space), h);
    for (int c = 0; c < static_cast<int>(rs.chambers.size()); ++c) {
      const auto pc = standard_parabolic(rs, {}, c);
      const int dim = subspace_sum(base, pc.n_F).dim();
      res.limit_dims.push_back(dim);
      res.limit_full |= (dim == g.dim());
    }
  }

  for (const MatrixXd& x : grid) {
    const MatrixXd a = x.exp();
    const MatrixXd ai = (-x).exp();
    std::vector<MatrixXd> moved;
    moved.reserve(cd.k_part.dim());
    for (int j = 0; j < cd.k_part.dim(); ++j) moved.push_back(ai * cd.k_part.matrix(j) * a);
    Subspace ka = Subspace::from_matrices(g, moved);
    if (subspace_sum(subspace_sum(ka, rs.a_space), h).dim() == g.dim()) {
      res.found = true;
      res.witness = x;
      return res;
    }
  }
  return res;
}

}  // namespace spherodeck
