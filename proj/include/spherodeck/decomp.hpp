#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <thread>

#include "spherodeck/catalog.hpp"
#include "spherodeck/rng.hpp"
#include "spherodeck/sphericity.hpp"

namespace spherodeck {

/// A verified decomposition g = k exp(X_a) h with k in K, X_a in a, h in H.
struct KAHWitness {
  MatrixXd k;
  MatrixXd x_a;       // ambient matrix, element of a
  MatrixXd h;
  VectorXd a_coords;  // x_a over the catalog a-basis
  double residual = 0.0;
  int chamber = -1;
};

inline double witness_residual(const MatrixXd& g, const KAHWitness& w) {
  return (w.k * w.x_a.exp() * w.h - g).norm();
}

/// Orthogonality defect of the K-component.
inline double k_defect(const KAHWitness& w) {
  return (w.k.transpose() * w.k - MatrixXd::Identity(w.k.rows(), w.k.cols())).norm();
}

/// Structural distance of h from the subgroup H, by decomposition family.
inline double h_membership_residual(const SpaceDefinition& sp, const MatrixXd& h) {
  double res = 0.0;
  switch (sp.decomposition) {
    case DecompositionKind::GroupKak:
    case DecompositionKind::TripleClosedForm:
    case DecompositionKind::TripleReduced: {
      // Diagonal embedding: all blocks equal.
      const MatrixXd b0 = sp.block_of(h, 0);
      for (std::size_t b = 1; b < sp.blocks.size(); ++b)
        res = std::max(res, (sp.block_of(h, static_cast<int>(b)) - b0).norm());
      break;
    }
    case DecompositionKind::GrossPrasad:
    case DecompositionKind::Generic: {
      // Corner embedding: big block = corner(small block), identity elsewhere.
      const MatrixXd big = sp.block_of(h, 0);
      const MatrixXd small = sp.block_of(h, 1);
      const int m = static_cast<int>(big.rows());
      const int n = static_cast<int>(small.rows());
      const int off = m - n;
      MatrixXd expected = MatrixXd::Identity(m, m);
      expected.block(off, off, n, n) = small;
      res = (big - expected).norm();
      break;
    }
    case DecompositionKind::SpChain: {
      // h in L (fixed by conjugation with d) with the second factor compact.
      MatrixXd d = MatrixXd::Identity(4, 4);
      d(1, 1) = d(3, 3) = -1;
      res = (d * h * d - h).norm();
      MatrixXd l2(2, 2);
      l2 << h(1, 1), h(1, 3), h(3, 1), h(3, 3);
      res = std::max(res, (l2.transpose() * l2 - MatrixXd::Identity(2, 2)).norm());
      break;
    }
  }
  res = std::max(res, sp.variety_residual(h));
  return res;
}

/// Seeded random group element g = exp(S) exp(T), S Gaussian in s scaled to
/// Frobenius norm at most 3, T Gaussian in k.
inline MatrixXd sample_group(const SpaceDefinition& sp, Rng& rng) {
  VectorXd cs(sp.cartan.s_part.dim());
  for (int i = 0; i < cs.size(); ++i) cs(i) = rng.gaussian();
  MatrixXd s = sp.g->matrix_of(sp.cartan.s_part.frame() * cs);
  if (s.norm() > 3.0) s *= 3.0 / s.norm();
  VectorXd ck(sp.cartan.k_part.dim());
  for (int i = 0; i < ck.size(); ++i) ck(i) = rng.gaussian();
  const MatrixXd t = sp.g->matrix_of(sp.cartan.k_part.frame() * ck);
  return s.exp() * t.exp();
}

// ---------------------------------------------------------------------------
// KAK for the classical 2x2 and n x n cases
// ---------------------------------------------------------------------------

struct KakResult {
  MatrixXd k1, a, k2;  // g = k1 * a * k2, a positive diagonal, decreasing
};

/// SVD with determinant-sign correction: k1, k2 special orthogonal when
/// det g > 0; the chamber element log(a) is dominant (decreasing diagonal).
inline KakResult kak_decompose(const MatrixXd& g) {
  Eigen::JacobiSVD<MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  MatrixXd u = svd.matrixU(), v = svd.matrixV();
  if (u.determinant() < 0 && v.determinant() < 0) {
    u.col(u.cols() - 1) *= -1.0;
    v.col(v.cols() - 1) *= -1.0;
  }
  KakResult r;
  r.k1 = u;
  r.a = MatrixXd(svd.singularValues().asDiagonal());
  r.k2 = v.transpose();
  return r;
}

namespace detail {

inline double rotation_angle(const MatrixXd& k) { return std::atan2(k(1, 0), k(0, 0)); }

inline MatrixXd rotation2(double phi) {
  MatrixXd r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mostow decomposition
// ---------------------------------------------------------------------------

struct MostowResult {
  MatrixXd k;
  MatrixXd x;  // element of s ^ q
  MatrixXd h;
  double residual = 0.0;
  double q_defect = 0.0;  // norm of the (h ^ s)-component of x at acceptance
};

/// Solves g z0 = k exp(X) z0 with X in s ^ q by Newton iteration on the
/// (h ^ s)-component of the polar log of g h^{-1}; the minimization runs in
/// the exp chart of h ^ s, per H-component representative.
inline MostowResult mostow_decompose(const SpaceDefinition& sp, const MatrixXd& g,
                                     std::uint64_t seed = 1, int max_restarts = 16) {
  const Subspace& hs = sp.h_cap_s;
  const Subspace& hs_proj = sp.h_cap_s;
  const int dim = hs.dim();
  const double gnorm = std::max(1.0, g.norm());

  auto x_of = [&](const MatrixXd& c, const VectorXd& t) {
    MatrixXd ht = MatrixXd::Zero(sp.ambient(), sp.ambient());
    for (int i = 0; i < dim; ++i) ht += t(i) * hs.matrix(i);
    return log_spd_part(g * c.inverse() * (-ht).exp());
  };
  auto resid = [&](const MatrixXd& c, const VectorXd& t) -> VectorXd {
    const MatrixXd x = x_of(c, t);
    return hs_proj.frame().transpose() * sp.g->coords_of(x, false);
  };

  MostowResult best;
  best.residual = 1e300;
  for (const MatrixXd& comp : sp.h_component_reps) {
    for (int restart = 0; restart < max_restarts; ++restart) {
      VectorXd t = VectorXd::Zero(dim);
      if (restart > 0) {
        Rng rng(seed, "mostow-restart", restart);
        for (int i = 0; i < dim; ++i) t(i) = 2.0 * rng.gaussian();
      }
      bool converged = dim == 0;
      for (int iter = 0; iter < 80 && !converged; ++iter) {
        const VectorXd r = resid(comp, t);
        if (r.norm() < 1e-12 * gnorm) {
          converged = true;
          break;
        }
        MatrixXd jac(dim, dim);
        const double eps = 1e-6;
        for (int i = 0; i < dim; ++i) {
          VectorXd tp = t, tm = t;
          tp(i) += eps;
          tm(i) -= eps;
          jac.col(i) = (resid(comp, tp) - resid(comp, tm)) / (2 * eps);
        }
        VectorXd step = jac.colPivHouseholderQr().solve(-r);
        double scale = 1.0;
        const double f0 = r.squaredNorm();
        for (int ls = 0; ls < 30; ++ls) {
          if (resid(comp, t + scale * step).squaredNorm() < f0) break;
          scale *= 0.5;
        }
        t += scale * step;
        if ((scale * step).norm() < 1e-14) break;
      }
      const VectorXd r = resid(comp, t);
      MatrixXd ht = MatrixXd::Zero(sp.ambient(), sp.ambient());
      for (int i = 0; i < dim; ++i) ht += t(i) * hs.matrix(i);
      const MatrixXd hmat = ht.exp() * comp;
      const MatrixXd x = x_of(comp, t);
      const MatrixXd k = g * hmat.inverse() * sym_exp(-x);
      const double res = (k * sym_exp(x) * hmat - g).norm();
      if (r.norm() < 1e-9 * gnorm && res < best.residual) {
        best = {k, x, hmat, res, r.norm()};
        break;  // next component still tried; restarts no longer needed
      }
    }
  }
  if (best.residual > tol::tau_dec * gnorm)
    throw SolverFailure(sp.name + ": mostow decomposition did not converge");
  return best;
}

// ---------------------------------------------------------------------------
// Constructive solvers
// ---------------------------------------------------------------------------

namespace detail {

/// AMBK factors of x in SL(2,R): x = a * m * b * k with a positive diagonal,
/// m = I, b a boost (cosh/sinh), k a rotation. Closed form from x x^T.
struct Ambk {
  MatrixXd a, b, k;
  double u = 0.0, s = 0.0;
};

inline Ambk ambk_sl2(const MatrixXd& x) {
  const MatrixXd p = x * x.transpose();
  Ambk r;
  r.s = 0.5 * std::asinh(p(0, 1));
  const double c2s = std::sqrt(1.0 + p(0, 1) * p(0, 1));
  r.u = 0.5 * std::log(p(0, 0) / c2s);
  r.a = MatrixXd::Zero(2, 2);
  r.a(0, 0) = std::exp(r.u);
  r.a(1, 1) = std::exp(-r.u);
  r.b = MatrixXd(2, 2);
  r.b << std::cosh(r.s), std::sinh(r.s), std::sinh(r.s), std::cosh(r.s);
  r.k = r.b.inverse() * r.a.inverse() * x;
  return r;
}

}  // namespace detail

/// Constructive KAH for the triple space with A = A0 x A0 x B0: the
/// symmetric-pair step on the first two factors via KAK of the transporter,
/// then the AMBK split of the third component.
inline KAHWitness kah_triple(const SpaceDefinition& sp, const MatrixXd& g) {
  // Work with the inverse: the proof produces an H A K product.
  const MatrixXd gi = g.inverse();
  const MatrixXd x1 = sp.block_of(gi, 0), x2 = sp.block_of(gi, 1), x3 = sp.block_of(gi, 2);

  const KakResult kk = kak_decompose(x2.inverse() * x1);
  const double tau = std::log(kk.a(0, 0));
  MatrixXd dhalf = MatrixXd::Zero(2, 2);
  dhalf(0, 0) = std::exp(tau / 2);
  dhalf(1, 1) = std::exp(-tau / 2);
  const MatrixXd k1 = kk.k2;       // right KAK factor
  const MatrixXd k2 = kk.k1.inverse();
  const MatrixXd a1 = dhalf;
  const MatrixXd a2 = dhalf.inverse();
  const MatrixXd gg = x1 * k1.inverse() * a1.inverse();

  const auto am = detail::ambk_sl2(gg.inverse() * x3);

  const MatrixXd ha = gg * am.a;                      // diagonal H A K: h-part
  const MatrixXd a1p = am.a.inverse() * a1;
  const MatrixXd a2p = am.a.inverse() * a2;

  KAHWitness w;
  w.k = sp.embed_blocks({k1.inverse(), k2.inverse(), am.k.inverse()});
  // X of the inverse decomposition, negated.
  MatrixXd xlog = MatrixXd::Zero(6, 6);
  xlog.block(0, 0, 2, 2) = -MatrixXd(a1p.diagonal().array().log().matrix().asDiagonal());
  xlog.block(2, 2, 2, 2) = -MatrixXd(a2p.diagonal().array().log().matrix().asDiagonal());
  MatrixXd blog(2, 2);
  blog << 0, -am.s, -am.s, 0;
  xlog.block(4, 4, 2, 2) = blog;
  w.x_a = xlog;
  w.h = sp.embed_blocks({ha, ha, ha}).inverse();
  w.residual = witness_residual(g, w);
  return w;
}

/// KAH for the triple space with three pairwise-distinct directions:
/// eliminating h through the third factor leaves two log-alignment
/// conditions in the two unknowns of w = k3 exp(t D3); Gauss-Newton with a
/// coarse multistart grid solves them.
inline KAHWitness kah_triple_reduced(const SpaceDefinition& sp, const MatrixXd& g,
                                     std::uint64_t seed = 1) {
  const MatrixXd g3i = sp.block_of(g, 2).inverse();
  const MatrixXd x1 = sp.block_of(g, 0) * g3i;
  const MatrixXd x2 = sp.block_of(g, 1) * g3i;
  const MatrixXd s1 = x1.transpose() * x1;
  const MatrixXd s2 = x2.transpose() * x2;
  const MatrixXd d1 = sp.block_of(sp.a_basis[0], 0);
  const MatrixXd d2 = sp.block_of(sp.a_basis[1], 1);
  const MatrixXd d3 = sp.block_of(sp.a_basis[2], 2);

  auto perp = [](const MatrixXd& d) {
    MatrixXd p(2, 2);
    p << -d(0, 1), d(0, 0), d(0, 0), d(0, 1);
    return p;
  };
  const MatrixXd d1p = perp(d1), d2p = perp(d2);

  auto wmat = [&](double phi, double t) { return detail::rotation2(phi) * (t * d3).exp(); };
  auto fvec = [&](double phi, double t) -> Eigen::Vector2d {
    const MatrixXd w = wmat(phi, t);
    Eigen::Vector2d f;
    f(0) = (spd_log(w.transpose() * s1 * w).array() * d1p.array()).sum();
    f(1) = (spd_log(w.transpose() * s2 * w).array() * d2p.array()).sum();
    return f;
  };

  const double treach = 0.5 * std::max(opnorm(spd_log(s1)), opnorm(spd_log(s2))) + 1.0;
  double best_phi = 0, best_t = 0;
  double best = 1e300;
  bool solved = false;
  for (int pass = 0; pass < 2 && !solved; ++pass) {
    std::vector<std::pair<double, double>> starts;
    if (pass == 0) {
      for (int i = 0; i < 8; ++i)
        for (double t : {0.0, 0.5 * treach, -0.5 * treach, treach, -treach})
          starts.push_back({i * std::numbers::pi / 8, t});
    } else {
      Rng rng(seed, "triple-restart");
      for (int i = 0; i < 64; ++i)
        starts.push_back({rng.uniform(0, std::numbers::pi), rng.uniform(-treach, treach)});
    }
    for (auto [phi, t] : starts) {
      for (int iter = 0; iter < 60; ++iter) {
        const Eigen::Vector2d f = fvec(phi, t);
        if (f.norm() < 1e-13) break;
        const double eps = 1e-7;
        Eigen::Matrix2d jac;
        jac.col(0) = (fvec(phi + eps, t) - fvec(phi - eps, t)) / (2 * eps);
        jac.col(1) = (fvec(phi, t + eps) - fvec(phi, t - eps)) / (2 * eps);
        Eigen::Vector2d step = jac.colPivHouseholderQr().solve(-f);
        double sc = 1.0;
        const double f0 = f.squaredNorm();
        for (int ls = 0; ls < 25; ++ls) {
          if (fvec(phi + sc * step(0), t + sc * step(1)).squaredNorm() < f0) break;
          sc *= 0.5;
        }
        phi += sc * step(0);
        t += sc * step(1);
        if ((sc * step).norm() < 1e-15) break;
      }
      const double fn = fvec(phi, t).norm();
      if (fn < best) {
        best = fn;
        best_phi = phi;
        best_t = t;
      }
      if (fn < 1e-11) {
        solved = true;
        break;
      }
    }
  }
  if (best > 1e-9)
    throw SolverFailure(sp.name + ": triple reduction did not converge (residual " +
                        std::to_string(best) + ")");

  const MatrixXd w = wmat(best_phi, best_t);
  const MatrixXd l1 = spd_log(w.transpose() * s1 * w);
  const MatrixXd l2 = spd_log(w.transpose() * s2 * w);
  const double t1 = (l1.array() * d1.array()).sum() / 4.0;
  const double t2 = (l2.array() * d2.array()).sum() / 4.0;
  const MatrixXd k1 = x1 * w * (-t1 * d1).exp();
  const MatrixXd k2 = x2 * w * (-t2 * d2).exp();
  const MatrixXd hb = w.inverse() * sp.block_of(g, 2);

  KAHWitness wit;
  wit.k = sp.embed_blocks({k1, k2, detail::rotation2(best_phi)});
  wit.x_a = t1 * sp.a_basis[0] + t2 * sp.a_basis[1] + best_t * sp.a_basis[2];
  wit.h = sp.embed_blocks({hb, hb, hb});
  wit.residual = witness_residual(g, wit);
  return wit;
}

/// Group case G0 x G0 / diag: KAK of the transporter g1 g2^{-1}.
inline KAHWitness kah_group(const SpaceDefinition& sp, const MatrixXd& g) {
  const MatrixXd g1 = sp.block_of(g, 0), g2 = sp.block_of(g, 1);
  const KakResult kk = kak_decompose(g1 * g2.inverse());
  const double tau = std::log(kk.a(0, 0));
  MatrixXd xh = sp.block_of(sp.a_basis[0], 0);  // diag(1,-1) in the factor
  MatrixXd ah(2, 2);
  ah = (0.5 * tau * xh).exp();
  const MatrixXd hb = ah * kk.k2 * g2;

  KAHWitness w;
  w.k = sp.embed_blocks({kk.k1, kk.k2.inverse()});
  w.x_a = 0.5 * tau * sp.a_basis[0] - 0.5 * tau * sp.a_basis[1];
  w.h = sp.embed_blocks({hb, hb});
  w.residual = witness_residual(g, w);
  return w;
}

namespace detail {

/// y = u * a * emb(b) * emb(v) with u in O(m), a in the block torus A_m,
/// b in A_{m-1}, v in O(m-1), all embedded from the lower-right corner.
struct GpFactors {
  MatrixXd u, a, b, v;  // sizes m, m, m-1, m-1
};

inline GpFactors gp_decompose(const MatrixXd& y) {
  const int m = static_cast<int>(y.rows());
  if (m == 1) {
    GpFactors f;
    f.u = MatrixXd::Constant(1, 1, y(0, 0) >= 0 ? 1.0 : -1.0);
    f.a = MatrixXd::Constant(1, 1, std::abs(y(0, 0)));
    f.b = MatrixXd(0, 0);
    f.v = MatrixXd(0, 0);
    return f;
  }
  const MatrixXd s = y.transpose() * y;
  const double p = s(0, 0);
  const VectorXd s1 = s.block(1, 0, m - 1, 1);
  const MatrixXd s22 = s.block(1, 1, m - 1, m - 1);
  const Eigen::LLT<MatrixXd> llt(s22);
  if (llt.info() != Eigen::Success) throw SolverFailure("gp_decompose: Gram block not SPD");
  const MatrixXd lmat = llt.matrixL();
  const VectorXd vv = lmat.triangularView<Eigen::Lower>().solve(s1);
  const double nv = vv.norm();
  // Householder Q with Q v = |v| e1.
  MatrixXd q = MatrixXd::Identity(m - 1, m - 1);
  if (nv > 1e-300) {
    VectorXd u = vv;
    u(0) -= nv;
    const double un = u.norm();
    if (un > 1e-300) q = MatrixXd::Identity(m - 1, m - 1) - 2.0 * (u * u.transpose()) / (un * un);
    q = q.transpose();  // maps vv to |v| e1
  }
  const double qq = std::sqrt(p) * nv;
  if (p <= qq) throw SolverFailure("gp_decompose: Schur complement not positive");
  VectorXd dscale = VectorXd::Ones(m - 1);
  dscale(0) = 1.0 / std::sqrt(p);
  const MatrixXd z = dscale.asDiagonal() * q * MatrixXd(lmat.transpose());
  // b1 = sqrt([[p,q],[q,p]]) + identity tail.
  const double al = 0.5 * (std::sqrt(p + qq) + std::sqrt(p - qq));
  const double be = 0.5 * (std::sqrt(p + qq) - std::sqrt(p - qq));
  MatrixXd b1 = MatrixXd::Identity(m, m);
  b1(0, 0) = b1(1, 1) = al;
  b1(0, 1) = b1(1, 0) = be;
  MatrixXd zi = MatrixXd::Identity(m, m);
  zi.block(1, 1, m - 1, m - 1) = z;
  const MatrixXd u0 = y * zi.inverse() * b1.inverse();

  const GpFactors sub = gp_decompose(z.inverse());  // z^{-1} = w c emb(d) emb(x)
  GpFactors f;
  // z = emb(x^{-1}) emb(d^{-1}) c^{-1} w^{-1}; the b1 block commutes with the
  // doubly-embedded factors.
  MatrixXd xi2 = MatrixXd::Identity(m, m);
  if (sub.v.size() > 0) xi2.block(2, 2, m - 2, m - 2) = sub.v.inverse();
  MatrixXd di2 = MatrixXd::Identity(m, m);
  if (sub.b.size() > 0) di2.block(2, 2, m - 2, m - 2) = sub.b.inverse();
  f.u = u0 * xi2;
  f.a = b1 * di2;
  f.b = sub.a.inverse();
  f.v = sub.u.inverse();
  return f;
}

/// Log of a block-torus element: 2x2 blocks [[al,be],[be,al]] with al > |be|
/// and positive scalars.
inline MatrixXd block_torus_log(const MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  MatrixXd x = MatrixXd::Zero(m, m);
  int i = 0;
  while (i < m) {
    if (i + 1 < m && std::abs(a(i, i + 1)) > 1e-14) {
      const double al = a(i, i), be = a(i, i + 1);
      const double lp = std::log(al + be), lm = std::log(al - be);
      x(i, i) = x(i + 1, i + 1) = 0.5 * (lp + lm);
      x(i, i + 1) = x(i + 1, i) = 0.5 * (lp - lm);
      i += 2;
    } else {
      x(i, i) = std::log(a(i, i));
      i += 1;
    }
  }
  return x;
}

}  // namespace detail

/// Constructive KAH for GL(n+1) x GL(n) / diag GL(n): the inductive
/// corner-torus decomposition of y = g1 emb(g2)^{-1}.
inline KAHWitness kah_gross_prasad(const SpaceDefinition& sp, const MatrixXd& g) {
  const int m = sp.blocks[0].size;
  const int n = sp.blocks[1].size;
  const MatrixXd g1 = sp.block_of(g, 0);
  const MatrixXd g2 = sp.block_of(g, 1);
  MatrixXd g2e = MatrixXd::Identity(m, m);
  g2e.block(m - n, m - n, n, n) = g2;
  const MatrixXd y = g1 * g2e.inverse();

  const auto f = detail::gp_decompose(y);  // y = u a emb(b) emb(v)
  const MatrixXd x1 = detail::block_torus_log(f.a);
  const MatrixXd x2 = -detail::block_torus_log(f.b);
  const MatrixXd h0 = f.b * f.v * g2;

  KAHWitness w;
  w.k = sp.embed_blocks({f.u, f.v.inverse()});
  MatrixXd xa = MatrixXd::Zero(sp.ambient(), sp.ambient());
  xa.block(0, 0, m, m) = x1;
  xa.block(m, m, n, n) = x2;
  w.x_a = xa;
  MatrixXd h0e = MatrixXd::Identity(m, m);
  h0e.block(m - n, m - n, n, n) = h0;
  w.h = sp.embed_blocks({h0e, h0});
  w.residual = witness_residual(g, w);
  return w;
}

/// Standalone Gross-Prasad torus decomposition for raw GL(m) x GL(m-1)
/// pairs; used by tests for ranks beyond the shipped catalog entries.
inline double gp_raw_residual(const MatrixXd& g1, const MatrixXd& g2) {
  const int m = static_cast<int>(g1.rows());
  const int n = static_cast<int>(g2.rows());
  MatrixXd g2e = MatrixXd::Identity(m, m);
  g2e.block(m - n, m - n, n, n) = g2;
  const MatrixXd y = g1 * g2e.inverse();
  const auto f = detail::gp_decompose(y);
  MatrixXd be = MatrixXd::Identity(m, m);
  be.block(m - n, m - n, n, n) = f.b;
  MatrixXd ve = MatrixXd::Identity(m, m);
  ve.block(m - n, m - n, n, n) = f.v;
  return (f.u * f.a * be * ve - y).norm() / std::max(1.0, y.norm());
}

/// Chain solver for Sp(2,R) / (Sp(1,R) x U(1)): the symmetric-pair step to
/// L = Sp(1) x Sp(1) via the eigenstructure of (g d g^{-1})^T (g d g^{-1}),
/// a one-parameter alignment solve in K, then KAK inside the second factor.
inline KAHWitness kah_sp_chain(const SpaceDefinition& sp, const MatrixXd& g) {
  using detail::rotation2;
  const int n = 4;
  MatrixXd d = MatrixXd::Identity(n, n);
  d(1, 1) = d(3, 3) = -1;
  MatrixXd jmat = MatrixXd::Zero(n, n);
  jmat.block(0, 2, 2, 2) = MatrixXd::Identity(2, 2);
  jmat.block(2, 0, 2, 2) = -MatrixXd::Identity(2, 2);
  const MatrixXd y1 = sp.a_basis[1];             // [b, 0, 0]
  const MatrixXd zc = sp.a_basis[0];             // [I, 0, 0]
  const MatrixXd w1 = (VectorXd(4) << 1, 1, 0, 0).finished().normalized();
  const MatrixXd w2 = (VectorXd(4) << 0, 0, 1, -1).finished().normalized();

  const MatrixXd m = g * d * g.inverse();
  const MatrixXd s = m.transpose() * m;  // = k exp(-4 t Y1) k^{-1}
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  const double t1 = 0.25 * std::log(es.eigenvalues()(n - 1));

  MatrixXd k, l;
  if (es.eigenvalues()(n - 1) - 1.0 < 1e-10) {
    // On the wall: g lies in K L, so its polar part is already in l.
    const Polar p = polar(g);
    if ((d * p.x * d - p.x).norm() > 1e-8 * std::max(1.0, g.norm()))
      throw SolverFailure(sp.name + ": polar part off the subgroup at the chamber wall");
    k = p.q;
    l = sym_exp(p.x);
  } else {
    // Frame for W+ = +1 eigenspace of Y1 and its image under k.
    MatrixXd fw(n, n);
    fw.col(0) = w1;
    fw.col(1) = w2;
    fw.col(2) = jmat * w1;
    fw.col(3) = jmat * w2;

    MatrixXd fv(n, n);
    fv.col(0) = es.eigenvectors().col(0);
    fv.col(1) = es.eigenvectors().col(1);
    fv.col(2) = jmat * fv.col(0);
    fv.col(3) = jmat * fv.col(1);
    // fv is orthogonal because the small eigenplane is Lagrangian.
    const MatrixXd k0 = fv * fw.transpose();

    auto stab = [&](double phi, bool reflect) {
      Eigen::Matrix2d r2;
      if (reflect)
        r2 << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
      else
        r2 << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
      MatrixXd blk = MatrixXd::Zero(n, n);
      blk.block(0, 0, 2, 2) = r2;
      blk.block(2, 2, 2, 2) = r2;
      return MatrixXd(fw * blk * fw.transpose());
    };
    auto l_of = [&](const MatrixXd& kc) { return MatrixXd((-t1 * y1).exp() * kc.inverse() * g); };
    auto rho = [&](double phi, bool reflect) {
      const MatrixXd lc = l_of(k0 * stab(phi, reflect));
      return (d * lc * d - lc).norm();
    };
    auto golden = [&](double center, bool reflect) {
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      const double width = std::numbers::pi / 96;
      double lo = center - width, hi = center + width;
      double c = hi - gr * (hi - lo), e = lo + gr * (hi - lo);
      double fc = rho(c, reflect), fe = rho(e, reflect);
      for (int it = 0; it < 80; ++it) {
        if (fc < fe) {
          hi = e;
          e = c;
          fe = fc;
          c = hi - gr * (hi - lo);
          fc = rho(c, reflect);
        } else {
          lo = c;
          c = e;
          fc = fe;
          e = lo + gr * (hi - lo);
          fe = rho(e, reflect);
        }
      }
      return 0.5 * (lo + hi);
    };

    struct Cand {
      double phi;
      bool reflect;
      double value;
    };
    std::vector<Cand> cands;
    const int grid = 96;
    for (int branch = 0; branch < 2; ++branch)
      for (int i = 0; i < grid; ++i) {
        const double phi = i * std::numbers::pi / grid;
        cands.push_back({phi, branch == 1, rho(phi, branch == 1)});
      }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.value < b.value; });
    double best = 1e300, best_phi = 0;
    bool best_ref = false;
    for (int c = 0; c < 6 && c < static_cast<int>(cands.size()); ++c) {
      const double phi = golden(cands[c].phi, cands[c].reflect);
      const double v = rho(phi, cands[c].reflect);
      if (v < best) {
        best = v;
        best_phi = phi;
        best_ref = cands[c].reflect;
      }
    }
    if (best > 1e-8 * std::max(1.0, g.norm()))
      throw SolverFailure(sp.name + ": sp chain alignment did not converge (residual " +
                          std::to_string(best) + ")");
    k = k0 * stab(best_phi, best_ref);
    l = l_of(k);
  }

  // Split l = l1 * l2 over the two symplectic planes.
  MatrixXd l2(2, 2);
  l2 << l(1, 1), l(1, 3), l(3, 1), l(3, 3);
  MatrixXd l1e = MatrixXd::Identity(n, n);
  l1e(0, 0) = l(0, 0);
  l1e(0, 2) = l(0, 2);
  l1e(2, 0) = l(2, 0);
  l1e(2, 2) = l(2, 2);

  const KakResult kk = kak_decompose(l2);
  const double t2 = std::log(kk.a(0, 0));
  // Angles matching exp(phi T) restricted to the (e1, e3) plane.
  const double phiu = std::atan2(kk.k1(0, 1), kk.k1(0, 0));
  const double phiv = std::atan2(kk.k2(0, 1), kk.k2(0, 0));

  auto sp2e = [&](const MatrixXd& a, const MatrixXd& b, const MatrixXd& c) {
    MatrixXd out = MatrixXd::Zero(4, 4);
    out.block(0, 0, 2, 2) = a;
    out.block(0, 2, 2, 2) = b;
    out.block(2, 2, 2, 2) = -a.transpose();
    out.block(2, 0, 2, 2) = c;
    return out;
  };
  const MatrixXd z2 = MatrixXd::Zero(2, 2);
  const MatrixXd e00 = build::unit(2, 0, 0), e11 = build::unit(2, 1, 1);
  const MatrixXd tfull = sp2e(z2, e11, -e11);        // u(1) generator of the second factor
  const MatrixXd t1gen = sp2e(z2, -e00 + e11, e00 - e11);  // commutes with Y1, lies in k
  const MatrixXd t2gen = sp2e(z2, e00, -e00);              // lies in l1, commutes with Y2
  const MatrixXd wgen = sp2e(e00, z2, z2);                 // [E00,0,0] in l1

  KAHWitness wit;
  wit.k = k * (phiu * t1gen).exp();
  wit.x_a = t1 * y1 + t2 * zc;
  wit.h = (-t2 * wgen).exp() * (phiu * t2gen).exp() * (phiv * tfull).exp() * l1e;
  wit.residual = witness_residual(g, wit);
  return wit;
}

// ---------------------------------------------------------------------------
// Generic fallback: alternating minimization over (K chart, a, H chart)
// ---------------------------------------------------------------------------

namespace detail {

/// Nearest element of the block-structured maximal compact subgroup: per
/// block an orthogonal Procrustes, refined per form signature for O(p,q)
/// blocks and through the complex structure for Sp blocks.
inline MatrixXd project_to_k(const SpaceDefinition& sp, const MatrixXd& target) {
  MatrixXd out = MatrixXd::Zero(sp.ambient(), sp.ambient());
  for (std::size_t b = 0; b < sp.blocks.size(); ++b) {
    const GroupBlock& blk = sp.blocks[b];
    const MatrixXd tb = target.block(blk.offset, blk.offset, blk.size, blk.size);
    MatrixXd kb;
    if (blk.family == BlockFamily::OForm) {
      // K respects the form's eigenvalue split: project sub-blocks.
      std::vector<int> plus, minus;
      for (int i = 0; i < blk.size; ++i)
        (blk.form(i, i) > 0 ? plus : minus).push_back(i);
      kb = MatrixXd::Zero(blk.size, blk.size);
      for (const auto* part : {&plus, &minus}) {
        const int sz = static_cast<int>(part->size());
        if (sz == 0) continue;
        MatrixXd sub(sz, sz);
        for (int i = 0; i < sz; ++i)
          for (int j = 0; j < sz; ++j) sub(i, j) = tb((*part)[i], (*part)[j]);
        const MatrixXd subo = nearest_orthogonal(sub);
        for (int i = 0; i < sz; ++i)
          for (int j = 0; j < sz; ++j) kb((*part)[i], (*part)[j]) = subo(i, j);
      }
    } else if (blk.family == BlockFamily::Sp) {
      // Sp ^ O = U(n): average out the anti-J-commuting part first.
      const int n2 = blk.size;
      MatrixXd jm = blk.form;  // the symplectic form is the complex structure here
      MatrixXd sym = 0.5 * (tb - jm * tb * jm);
      kb = nearest_orthogonal(sym);
      kb = 0.5 * (kb - jm * kb * jm);
      kb = nearest_orthogonal(kb);
      (void)n2;
    } else {
      kb = nearest_orthogonal(tb);
      if (blk.family == BlockFamily::SL && kb.determinant() < 0) {
        Eigen::JacobiSVD<MatrixXd> svd(tb, Eigen::ComputeFullU | Eigen::ComputeFullV);
        MatrixXd u = svd.matrixU(), v = svd.matrixV();
        u.col(u.cols() - 1) *= -1.0;
        kb = u * v.transpose();
      }
    }
    out.block(blk.offset, blk.offset, blk.size, blk.size) = kb;
  }
  return out;
}

}  // namespace detail

/// Generic alternating minimization of || k exp(X) h - g ||. Used where no
/// constructive algorithm is available; failures are evidence, not disproof.
inline KAHWitness generic_kah(const SpaceDefinition& sp, const MatrixXd& g,
                              std::uint64_t seed = 1, int restarts = 16, int max_iters = 500) {
  const int adim = static_cast<int>(sp.a_basis.size());
  const int hdim = sp.h.dim();
  const double gnorm = std::max(1.0, g.norm());

  KAHWitness best;
  best.residual = 1e300;
  for (const MatrixXd& comp : sp.h_component_reps) {
    for (int restart = 0; restart < restarts; ++restart) {
      Rng rng(seed, "generic-kah", restart);
      VectorXd xc = VectorXd::Zero(adim);
      MatrixXd h = comp;
      if (restart > 0) {
        for (int i = 0; i < adim; ++i) xc(i) = rng.gaussian();
        VectorXd hc(hdim);
        for (int i = 0; i < hdim; ++i) hc(i) = 0.5 * rng.gaussian();
        h = sp.g->matrix_of(sp.h.frame() * hc).exp() * comp;
      }
      MatrixXd k = MatrixXd::Identity(sp.ambient(), sp.ambient());
      double res = 1e300;
      for (int iter = 0; iter < max_iters; ++iter) {
        MatrixXd xa = MatrixXd::Zero(sp.ambient(), sp.ambient());
        for (int i = 0; i < adim; ++i) xa += xc(i) * sp.a_basis[i];
        const MatrixXd ea = xa.exp();
        k = detail::project_to_k(sp, g * (ea * h).transpose());

        // a-step: Gauss-Newton on the vectorized residual.
        {
          const MatrixXd r0 = k * ea * h - g;
          MatrixXd jac(r0.size(), adim);
          const double eps = 1e-6;
          for (int i = 0; i < adim; ++i) {
            VectorXd xp = xc;
            xp(i) += eps;
            MatrixXd xap = MatrixXd::Zero(sp.ambient(), sp.ambient());
            for (int t = 0; t < adim; ++t) xap += xp(t) * sp.a_basis[t];
            jac.col(i) = (vec(MatrixXd(k * xap.exp() * h - g)) - vec(r0)) / eps;
          }
          VectorXd step = (jac.transpose() * jac + 1e-12 * MatrixXd::Identity(adim, adim))
                              .ldlt()
                              .solve(-jac.transpose() * vec(r0));
          double sc = 1.0;
          const double f0 = r0.squaredNorm();
          for (int ls = 0; ls < 20; ++ls) {
            VectorXd xt = xc + sc * step;
            MatrixXd xat = MatrixXd::Zero(sp.ambient(), sp.ambient());
            for (int t = 0; t < adim; ++t) xat += xt(t) * sp.a_basis[t];
            if ((k * xat.exp() * h - g).squaredNorm() < f0) break;
            sc *= 0.5;
          }
          xc += sc * step;
        }

        // h-step: linear least squares in the right-invariant chart.
        {
          MatrixXd xa2 = MatrixXd::Zero(sp.ambient(), sp.ambient());
          for (int i = 0; i < adim; ++i) xa2 += xc(i) * sp.a_basis[i];
          const MatrixXd front = k * xa2.exp();
          const MatrixXd r0 = front * h - g;
          MatrixXd jac(r0.size(), hdim);
          for (int i = 0; i < hdim; ++i)
            jac.col(i) = vec(MatrixXd(front * h * sp.g->matrix_of(sp.h.frame().col(i))));
          VectorXd step = (jac.transpose() * jac + 1e-12 * MatrixXd::Identity(hdim, hdim))
                              .ldlt()
                              .solve(-jac.transpose() * vec(r0));
          double sc = 1.0;
          const double f0 = r0.squaredNorm();
          for (int ls = 0; ls < 20; ++ls) {
            const MatrixXd ht = h * sp.g->matrix_of(sp.h.frame() * (sc * step)).exp();
            if ((front * ht - g).squaredNorm() < f0) break;
            sc *= 0.5;
          }
          h = h * sp.g->matrix_of(sp.h.frame() * (sc * step)).exp();
          res = (front * h - g).norm();
        }
        if (res < 0.3 * tol::tau_dec * gnorm) break;
      }
      if (res < best.residual) {
        MatrixXd xa = MatrixXd::Zero(sp.ambient(), sp.ambient());
        for (int i = 0; i < adim; ++i) xa += xc(i) * sp.a_basis[i];
        best.k = k;
        best.x_a = xa;
        best.h = h;
        best.residual = res;
      }
      if (best.residual < 0.3 * tol::tau_dec * gnorm) break;
    }
    if (best.residual < 0.3 * tol::tau_dec * gnorm) break;
  }
  if (best.residual > tol::tau_dec * gnorm)
    throw SolverFailure(sp.name + ": generic KAH did not reach the residual target (best " +
                        std::to_string(best.residual) + ")");
  return best;
}

/// Dispatch to the space's decomposition strategy and attach the chamber.
inline KAHWitness kah_decompose(const SpaceDefinition& sp, const MatrixXd& g,
                                std::uint64_t seed = 1) {
  KAHWitness w;
  switch (sp.decomposition) {
    case DecompositionKind::GroupKak:
      w = kah_group(sp, g);
      break;
    case DecompositionKind::TripleClosedForm:
      w = kah_triple(sp, g);
      break;
    case DecompositionKind::TripleReduced:
      w = kah_triple_reduced(sp, g, seed);
      break;
    case DecompositionKind::GrossPrasad:
      w = kah_gross_prasad(sp, g);
      break;
    case DecompositionKind::SpChain:
      w = kah_sp_chain(sp, g);
      break;
    case DecompositionKind::Generic:
      w = generic_kah(sp, g, seed);
      break;
  }
  const double gnorm = std::max(1.0, g.norm());
  if (w.residual > tol::tau_dec * gnorm)
    throw SolverFailure(sp.name + ": witness residual " + std::to_string(w.residual) +
                        " above tolerance");
  w.a_coords = sp.roots.a_coords(w.x_a);
  w.chamber = chamber_of(sp.roots, w.x_a).chamber;
  return w;
}

// ---------------------------------------------------------------------------
// Coverage and wavefront probes
// ---------------------------------------------------------------------------

struct CoverageReport {
  int samples = 0;
  int covered = 0;
  int solver_failures = 0;
  std::map<int, int> per_chamber;
  std::vector<int> offenders;
  double coverage() const {
    const int n = samples - solver_failures;
    return n > 0 ? static_cast<double>(covered) / n : 0.0;
  }
};

/// Samples group elements, decomposes each, and checks whether the witness
/// chamber (any chamber whose closure holds X_a) has an open parabolic.
inline CoverageReport coverage_check(const SpaceDefinition& sp,
                                     const SphericityCertificate& cert, int samples,
                                     std::uint64_t seed, int threads = 1) {
  if (samples <= 0) throw InvalidInput("coverage_check: sample count must be positive");
  std::vector<bool> open(cert.per_parabolic.size());
  for (const auto& e : cert.per_parabolic) open[e.chamber] = e.open;

  struct Slot {
    int chamber = -1;
    bool covered = false;
    bool failed = false;
  };
  std::vector<Slot> slots(samples);
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Rng rng(seed, "sample", static_cast<std::uint64_t>(i));
      const MatrixXd g = sample_group(sp, rng);
      try {
        const KAHWitness w = kah_decompose(sp, g, seed + static_cast<std::uint64_t>(i));
        slots[i].chamber = w.chamber;
        for (int c : chambers_containing(sp.roots, w.x_a))
          if (open[c]) slots[i].covered = true;
      } catch (const SolverFailure&) {
        slots[i].failed = true;
      }
    }
  };
  if (threads <= 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int b = t * chunk, e = std::min(samples, (t + 1) * chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  CoverageReport rep;
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    if (slots[i].failed) {
      ++rep.solver_failures;
      continue;
    }
    ++rep.per_chamber[slots[i].chamber];
    if (slots[i].covered)
      ++rep.covered;
    else
      rep.offenders.push_back(i);
  }
  return rep;
}

struct WavefrontReport {
  double delta_estimate = 0.0;
  double worst_value = 0.0;      // largest inf_h distance seen at the accepted delta
  int minimizer_failures = 0;
  MatrixXd worst_g;
};

namespace detail {

/// inf over h in H of || g u h g^{-1} - 1 ||, by Gauss-Newton from h = e.
inline double conjugated_distance(const SpaceDefinition& sp, const MatrixXd& g,
                                  const MatrixXd& u, bool* ok) {
  const int hdim = sp.h.dim();
  const MatrixXd gi = g.inverse();
  MatrixXd h = MatrixXd::Identity(sp.ambient(), sp.ambient());
  double val = (g * u * h * gi - MatrixXd::Identity(sp.ambient(), sp.ambient())).norm();
  for (int iter = 0; iter < 60; ++iter) {
    const MatrixXd front = g * u;
    const MatrixXd r0 = front * h * gi - MatrixXd::Identity(sp.ambient(), sp.ambient());
    MatrixXd jac(r0.size(), hdim);
    for (int i = 0; i < hdim; ++i)
      jac.col(i) = vec(MatrixXd(front * h * sp.g->matrix_of(sp.h.frame().col(i)) * gi));
    VectorXd step = (jac.transpose() * jac + 1e-12 * MatrixXd::Identity(hdim, hdim))
                        .ldlt()
                        .solve(-jac.transpose() * vec(r0));
    double sc = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 20; ++ls) {
      const MatrixXd ht = h * sp.g->matrix_of(sp.h.frame() * (sc * step)).exp();
      const double vt = (front * ht * gi - MatrixXd::Identity(sp.ambient(), sp.ambient())).norm();
      if (vt < val) {
        h = ht;
        val = vt;
        improved = true;
        break;
      }
      sc *= 0.5;
    }
    if (!improved) break;
  }
  *ok = true;
  return val;
}

}  // namespace detail

/// Estimates the largest delta <= epsilon such that every sampled
/// g u-translate stays inside the epsilon-ball modulo H. Samples g from
/// K exp(closed open chambers), u from the delta-sphere.
inline WavefrontReport wavefront_probe(const SpaceDefinition& sp,
                                       const SphericityCertificate& cert, double epsilon,
                                       int samples, std::uint64_t seed) {
  std::vector<int> open_chambers;
  for (const auto& e : cert.per_parabolic)
    if (e.open) open_chambers.push_back(e.chamber);
  if (open_chambers.empty()) open_chambers.push_back(0);

  auto sample_pair = [&](int i, double delta, MatrixXd& g, MatrixXd& u) {
    Rng rng(seed, "wavefront", static_cast<std::uint64_t>(i));
    // g = k exp(X), X in the closure of an open chamber, radial reach 3.
    VectorXd ck(sp.cartan.k_part.dim());
    for (int t = 0; t < ck.size(); ++t) ck(t) = rng.gaussian();
    const MatrixXd k = sp.g->matrix_of(sp.cartan.k_part.frame() * ck).exp();
    const int c = open_chambers[rng.below(open_chambers.size())];
    const auto& weyl = sp.roots.weyl[sp.roots.chambers[c].weyl_index];
    VectorXd dom(sp.roots.a_dim());
    dom.setZero();
    for (int j = 0; j < sp.roots.dual_basis.cols(); ++j)
      dom += rng.uniform() * sp.roots.dual_basis.col(j);
    if (sp.roots.dual_basis.cols() < sp.roots.a_dim()) {
      // pad central directions
      for (int j = 0; j < sp.roots.a_dim(); ++j) dom(j) += 0.3 * rng.gaussian();
      dom = sp.roots.weyl[0].matrix * dom;  // identity, keeps shape
    }
    VectorXd xc = weyl.matrix * dom;
    MatrixXd x = sp.roots.a_matrix(xc);
    if (x.norm() > 3.0) x *= 3.0 / x.norm();
    g = k * x.exp();
    // u on the delta-sphere of the identity in d(x,y) = |x^{-1}y - 1|.
    VectorXd cu(sp.g->dim());
    for (int t = 0; t < cu.size(); ++t) cu(t) = rng.gaussian();
    MatrixXd dir = sp.g->matrix_of(cu);
    dir /= dir.norm();
    double lo = 0.0, hi = delta * 2;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (((mid * dir).exp() - MatrixXd::Identity(sp.ambient(), sp.ambient())).norm() < delta)
        lo = mid;
      else
        hi = mid;
    }
    u = (lo * dir).exp();
  };

  WavefrontReport rep;
  double lo = 0.0, hi = epsilon;
  double accepted_worst = 0.0;
  MatrixXd worst_g;
  for (int step = 0; step < 10; ++step) {
    const double delta = (step == 0) ? epsilon : 0.5 * (lo + hi);
    double worst = 0.0;
    MatrixXd wg;
    bool pass = true;
    for (int i = 0; i < samples; ++i) {
      MatrixXd g, u;
      sample_pair(i, delta, g, u);
      bool ok = false;
      const double m = detail::conjugated_distance(sp, g, u, &ok);
      if (!ok) {
        ++rep.minimizer_failures;
        continue;
      }
      if (m > worst) {
        worst = m;
        wg = g;
      }
      if (m > epsilon) {
        pass = false;
      }
    }
    if (pass) {
      lo = delta;
      accepted_worst = worst;
      worst_g = wg;
      if (step == 0) break;  // delta = epsilon already passes
    } else {
      hi = delta;
    }
  }
  rep.delta_estimate = lo;
  rep.worst_value = accepted_worst;
  rep.worst_g = worst_g;
  return rep;
}

/// Representative of a Weyl element inside K: solves Ad(k) a_i = w(a_i) by
/// Gauss-Newton in the exp chart of k, with seeded restarts.
inline std::optional<MatrixXd> weyl_representative(const SpaceDefinition& sp, int weyl_index,
                                                   std::uint64_t seed = 1) {
  const auto& w = sp.roots.weyl.at(weyl_index);
  const int kdim = sp.cartan.k_part.dim();
  const int adim = sp.roots.a_dim();
  std::vector<MatrixXd> targets;
  for (int i = 0; i < adim; ++i) {
    VectorXd img = w.matrix * VectorXd::Unit(adim, i);
    targets.push_back(sp.roots.a_matrix(img));
  }
  auto resid = [&](const VectorXd& t) -> VectorXd {
    const MatrixXd k = sp.g->matrix_of(sp.cartan.k_part.frame() * t).exp();
    VectorXd r(adim * sp.ambient() * sp.ambient());
    for (int i = 0; i < adim; ++i)
      r.segment(i * sp.ambient() * sp.ambient(), sp.ambient() * sp.ambient()) =
          vec(MatrixXd(k * sp.a_basis[i] * k.inverse() - targets[i]));
    return r;
  };
  for (int restart = 0; restart < 48; ++restart) {
    Rng rng(seed, "weyl-rep", restart);
    VectorXd t(kdim);
    for (int i = 0; i < kdim; ++i) t(i) = restart == 0 ? 0.0 : 2.0 * rng.gaussian();
    for (int iter = 0; iter < 120; ++iter) {
      const VectorXd r = resid(t);
      if (r.norm() < 1e-10) break;
      MatrixXd jac(r.size(), kdim);
      const double eps = 1e-6;
      for (int i = 0; i < kdim; ++i) {
        VectorXd tp = t, tm = t;
        tp(i) += eps;
        tm(i) -= eps;
        jac.col(i) = (resid(tp) - resid(tm)) / (2 * eps);
      }
      VectorXd step = (jac.transpose() * jac + 1e-10 * MatrixXd::Identity(kdim, kdim))
                          .ldlt()
                          .solve(-jac.transpose() * r);
      double sc = 1.0;
      const double f0 = r.squaredNorm();
      for (int ls = 0; ls < 25; ++ls) {
        if (resid(t + sc * step).squaredNorm() < f0) break;
        sc *= 0.5;
      }
      t += sc * step;
      if ((sc * step).norm() < 1e-14) break;
    }
    if (resid(t).norm() < 1e-9)
      return sp.g->matrix_of(sp.cartan.k_part.frame() * t).exp();
  }
  return std::nullopt;
}

}  // namespace spherodeck
