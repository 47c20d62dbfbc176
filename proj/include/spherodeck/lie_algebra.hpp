#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spherodeck/linalg.hpp"

namespace spherodeck {

inline MatrixXd bracket(const MatrixXd& x, const MatrixXd& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw InvalidInput("bracket: dimension mismatch");
  return x * y - y * x;
}

/// A real matrix Lie algebra given by an ambient size and a spanning basis,
/// with the Cartan involution theta(X) = -X^T. All derived data (orthonormal
/// coordinates, the trace form, the theta operator) is computed once at
/// construction. Immutable afterwards.
class LieAlgebraPresentation {
 public:
  LieAlgebraPresentation(std::string name, int ambient_size, std::vector<MatrixXd> basis)
      : name_(std::move(name)), n_(ambient_size), basis_(std::move(basis)) {
    if (n_ <= 0) throw InvalidPresentation(name_ + ": ambient size must be positive");
    if (basis_.empty()) throw InvalidPresentation(name_ + ": empty basis");
    const int d = static_cast<int>(basis_.size());
    flat_.resize(n_ * n_, d);
    for (int j = 0; j < d; ++j) {
      if (basis_[j].rows() != n_ || basis_[j].cols() != n_)
        throw InvalidPresentation(name_ + ": basis matrix has wrong shape");
      flat_.col(j) = vec(basis_[j]);
    }
    if (rank_of(flat_) != d)
      throw InvalidPresentation(name_ + ": basis matrices are linearly dependent");
    // Orthonormal internal coordinates: flat = Q * R with R invertible.
    Eigen::HouseholderQR<MatrixXd> qr(flat_);
    q_ = qr.householderQ() * MatrixXd::Identity(n_ * n_, d);
    r_ = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    // Trace-form Gram and theta operator on orthonormal coordinates.
    kappa_.resize(d, d);
    theta_op_.resize(d, d);
    for (int j = 0; j < d; ++j) {
      const MatrixXd bj = unvec(q_.col(j), n_, n_);
      theta_op_.col(j) = q_.transpose() * vec(MatrixXd(-bj.transpose()));
      for (int i = 0; i <= j; ++i) {
        const MatrixXd bi = unvec(q_.col(i), n_, n_);
        kappa_(i, j) = kappa_(j, i) = (bi * bj).trace();
      }
    }
  }

  const std::string& name() const { return name_; }
  int ambient_size() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<MatrixXd>& basis() const { return basis_; }
  const MatrixXd& kappa_gram() const { return kappa_; }
  const MatrixXd& theta_op() const { return theta_op_; }

  MatrixXd theta(const MatrixXd& x) const { return -x.transpose(); }

  /// Orthonormal coordinates of an ambient matrix; throws if it is not in
  /// the algebra (residual above tau_rank relative to the matrix size).
  VectorXd coords_of(const MatrixXd& m, bool check = true) const {
    VectorXd c = q_.transpose() * vec(m);
    if (check) {
      const double res = (q_ * c - vec(m)).norm();
      if (res > tol::tau_rank * std::max(1.0, m.norm()) * 100)
        throw InvalidInput(name_ + ": matrix does not lie in the algebra (residual " +
                           std::to_string(res) + ")");
    }
    return c;
  }

  double membership_residual(const MatrixXd& m) const {
    VectorXd c = q_.transpose() * vec(m);
    return (q_ * c - vec(m)).norm();
  }

  MatrixXd matrix_of(const VectorXd& coords) const { return unvec(q_ * coords, n_, n_); }

  /// Coordinates in the user-supplied presentation basis.
  VectorXd presentation_coords(const VectorXd& ortho_coords) const {
    return r_.triangularView<Eigen::Upper>().solve(ortho_coords);
  }

  /// The operator ad(x) on orthonormal coordinates (d x d).
  MatrixXd ad_operator(const MatrixXd& x) const {
    const int d = dim();
    MatrixXd a(d, d);
    for (int j = 0; j < d; ++j)
      a.col(j) = q_.transpose() * vec(MatrixXd(bracket(x, unvec(q_.col(j), n_, n_))));
    return a;
  }

  /// Invariant checks: bracket closure and theta stability. Returns a list of
  /// human-readable failures (empty when the presentation is valid).
  std::vector<std::string> invariant_failures() const {
    std::vector<std::string> out;
    const int d = dim();
    for (int i = 0; i < d; ++i) {
      const double res = membership_residual(theta(basis_[i]));
      if (res > tol::tau_rank * std::max(1.0, basis_[i].norm()) * 100)
        out.push_back(name_ + ": theta(basis[" + std::to_string(i) + "]) leaves the algebra");
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const MatrixXd b = bracket(basis_[i], basis_[j]);
        const double res = membership_residual(b);
        if (res > tol::tau_rank * std::max(1.0, b.norm()) * 100)
          out.push_back(name_ + ": bracket [" + std::to_string(i) + "," + std::to_string(j) +
                        "] leaves the algebra");
      }
    return out;
  }

  void validate() const {
    auto fails = invariant_failures();
    if (!fails.empty()) throw InvalidPresentation(fails.front());
  }

 private:
  std::string name_;
  int n_;
  std::vector<MatrixXd> basis_;
  MatrixXd flat_;      // n^2 x d, column j = vec(basis_j)
  MatrixXd q_;         // n^2 x d, orthonormal columns spanning the algebra
  MatrixXd r_;         // d x d with flat = q * r
  MatrixXd kappa_;     // trace form on orthonormal coordinates
  MatrixXd theta_op_;  // theta on orthonormal coordinates
};

/// A linear subspace of a Lie algebra. Internally kept as an orthonormal
/// coordinate frame (Frobenius metric on flattened matrices), which makes the
/// rank computations behind every openness test cheap and well conditioned.
class Subspace {
 public:
  Subspace() : parent_(nullptr) {}

  Subspace(const LieAlgebraPresentation* parent, MatrixXd ortho_frame)
      : parent_(parent), frame_(std::move(ortho_frame)) {}

  static Subspace from_matrices(const LieAlgebraPresentation& g,
                                const std::vector<MatrixXd>& mats) {
    MatrixXd c(g.dim(), static_cast<int>(mats.size()));
    for (int j = 0; j < static_cast<int>(mats.size()); ++j) c.col(j) = g.coords_of(mats[j]);
    return Subspace(&g, orth(c));
  }

  static Subspace from_coord_span(const LieAlgebraPresentation& g, const MatrixXd& coords) {
    return Subspace(&g, orth(coords));
  }

  static Subspace zero(const LieAlgebraPresentation& g) {
    return Subspace(&g, MatrixXd(g.dim(), 0));
  }

  static Subspace full(const LieAlgebraPresentation& g) {
    return Subspace(&g, MatrixXd::Identity(g.dim(), g.dim()));
  }

  const LieAlgebraPresentation* parent() const { return parent_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const MatrixXd& frame() const { return frame_; }

  /// Coordinates over the user-supplied presentation basis (the serialized
  /// form; orthonormal in flattened matrix coordinates by construction).
  MatrixXd basis_coords() const {
    MatrixXd out(frame_.rows(), frame_.cols());
    for (int j = 0; j < frame_.cols(); ++j)
      out.col(j) = parent_->presentation_coords(frame_.col(j));
    return out;
  }

  MatrixXd matrix(int j) const { return parent_->matrix_of(frame_.col(j)); }

  std::vector<MatrixXd> matrices() const {
    std::vector<MatrixXd> out;
    out.reserve(dim());
    for (int j = 0; j < dim(); ++j) out.push_back(matrix(j));
    return out;
  }

  bool contains_coords(const VectorXd& c) const {
    const VectorXd res = c - frame_ * (frame_.transpose() * c);
    return res.norm() <= tol::tau_rank * std::max(1.0, c.norm()) * 100;
  }

  bool contains_matrix(const MatrixXd& m) const {
    return contains_coords(parent_->coords_of(m));
  }

 private:
  const LieAlgebraPresentation* parent_;
  MatrixXd frame_;  // dim(g) x k, orthonormal columns
};

inline void require_same_parent(const Subspace& u, const Subspace& v) {
  if (u.parent() != v.parent())
    throw InvalidInput("subspace operation across different parent algebras");
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  require_same_parent(u, v);
  MatrixXd m(u.frame().rows(), u.dim() + v.dim());
  m << u.frame(), v.frame();
  return Subspace(u.parent(), orth(m));
}

inline Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  require_same_parent(u, v);
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(*u.parent());
  MatrixXd m(u.frame().rows(), u.dim() + v.dim());
  m << u.frame(), -v.frame();
  const MatrixXd null = nullspace(m);
  if (null.cols() == 0) return Subspace::zero(*u.parent());
  return Subspace(u.parent(), orth(u.frame() * null.topRows(u.dim())));
}

/// Whether v is contained in u (rank criterion at tau_rank).
inline bool contains(const Subspace& u, const Subspace& v) {
  require_same_parent(u, v);
  if (v.dim() == 0) return true;
  return subspace_sum(u, v).dim() == u.dim();
}

/// Frobenius-orthogonal complement of part within whole (part must lie in
/// whole for the dimensions to add up).
inline Subspace complement_within(const Subspace& whole, const Subspace& part) {
  require_same_parent(whole, part);
  if (part.dim() == 0) return whole;
  const MatrixXd null = nullspace(part.frame().transpose() * whole.frame());
  return Subspace(whole.parent(), orth(whole.frame() * null));
}

/// Kappa-orthogonal complement of h inside the full algebra (the space q
/// with g = h + q, kappa(h, q) = 0).
inline Subspace kappa_complement(const LieAlgebraPresentation& g, const Subspace& h) {
  if (h.parent() != &g) throw InvalidInput("kappa_complement: subspace of a different algebra");
  if (h.dim() == 0) return Subspace::full(g);
  return Subspace(&g, orth(nullspace((g.kappa_gram() * h.frame()).transpose())));
}

struct CartanDecomposition {
  Subspace k_part;  // +1 eigenspace of theta
  Subspace s_part;  // -1 eigenspace of theta
  VectorXd kappa_eigen_k;
  VectorXd kappa_eigen_s;
};

/// Splits the algebra into theta eigenspaces and verifies the trace-form
/// signature (negative definite on k, positive definite on s).
inline CartanDecomposition cartan_decompose(const LieAlgebraPresentation& g) {
  const int d = g.dim();
  const MatrixXd& th = g.theta_op();
  if ((th * th - MatrixXd::Identity(d, d)).norm() > 1e-7)
    throw InvalidPresentation(g.name() + ": theta is not an involution on the algebra");
  CartanDecomposition cd;
  cd.k_part = Subspace(&g, orth(0.5 * (MatrixXd::Identity(d, d) + th)));
  cd.s_part = Subspace(&g, orth(0.5 * (MatrixXd::Identity(d, d) - th)));
  if (cd.k_part.dim() + cd.s_part.dim() != d)
    throw InvalidPresentation(g.name() + ": theta eigenspaces do not fill the algebra");

  Eigen::SelfAdjointEigenSolver<MatrixXd> eg(g.kappa_gram());
  if (eg.eigenvalues().cwiseAbs().minCoeff() < tol::tau_def)
    throw NotReductive(g.name() + ": trace form is degenerate");
  auto restricted = [&](const Subspace& s) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(
        MatrixXd(s.frame().transpose() * g.kappa_gram() * s.frame()));
    return VectorXd(es.eigenvalues());
  };
  cd.kappa_eigen_k = restricted(cd.k_part);
  cd.kappa_eigen_s = restricted(cd.s_part);
  if (cd.kappa_eigen_k.size() && cd.kappa_eigen_k.maxCoeff() > -tol::tau_def)
    throw NotReductive(g.name() + ": trace form not negative definite on k");
  if (cd.kappa_eigen_s.size() && cd.kappa_eigen_s.minCoeff() < tol::tau_def)
    throw NotReductive(g.name() + ": trace form not positive definite on s");
  return cd;
}

}  // namespace spherodeck
