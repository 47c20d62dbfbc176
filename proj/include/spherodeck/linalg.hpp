#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "spherodeck/errors.hpp"

namespace spherodeck {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace tol {
/// Singular values below tau_rank * max(sigma_max, 1) count as zero.
inline constexpr double tau_rank = 1e-9;
/// Definiteness threshold for trace-form signature checks.
inline constexpr double tau_def = 1e-9;
/// Root functionals closer than this (per coordinate) are identified.
inline constexpr double tau_root = 1e-7;
/// Relative residual accepted for a decomposition witness.
inline constexpr double tau_dec = 1e-8;
}  // namespace tol

inline VectorXd vec(const MatrixXd& m) {
  return Eigen::Map<const VectorXd>(m.data(), m.size());
}

inline MatrixXd unvec(const VectorXd& v, int rows, int cols) {
  return Eigen::Map<const MatrixXd>(v.data(), rows, cols);
}

inline double sv_cutoff(const VectorXd& sv) {
  const double top = sv.size() ? sv(0) : 0.0;
  return tol::tau_rank * std::max(top, 1.0);
}

/// Rank-revealing orthonormal column basis of span(m).
inline MatrixXd orth(const MatrixXd& m) {
  if (m.cols() == 0) return MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = sv_cutoff(sv);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

inline int rank_of(const MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = sv_cutoff(sv);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

/// Orthonormal basis of the (right) null space of m.
inline MatrixXd nullspace(const MatrixXd& m) {
  if (m.rows() == 0) return MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv_cutoff(sv);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

/// Largest singular value (operator 2-norm).
inline double opnorm(const MatrixXd& m) {
  return Eigen::JacobiSVD<MatrixXd>(m).singularValues()(0);
}

inline MatrixXd sym_exp(const MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

/// Log of a symmetric positive definite matrix.
inline MatrixXd spd_log(const MatrixXd& p) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(p);
  if (es.eigenvalues().minCoeff() <= 0)
    throw InvalidInput("spd_log: matrix is not positive definite");
  return es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

struct Polar {
  MatrixXd q;  // orthogonal factor
  MatrixXd x;  // symmetric log of the SPD factor: a = q * exp(x)
};

/// Polar decomposition a = q * exp(x) with q orthogonal and x symmetric.
inline Polar polar(const MatrixXd& a) {
  Polar p;
  p.x = 0.5 * spd_log(a.transpose() * a);
  p.q = a * sym_exp(-p.x);
  return p;
}

/// Symmetric part of the log: x with a in O(n) * exp(x).
inline MatrixXd log_spd_part(const MatrixXd& a) { return 0.5 * spd_log(a.transpose() * a); }

/// Closest orthogonal matrix (Procrustes).
inline MatrixXd nearest_orthogonal(const MatrixXd& a) {
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

/// Parses a decimal number or an exact rational "p/q".
inline double parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  const double p = std::stod(s.substr(0, slash));
  const double q = std::stod(s.substr(slash + 1));
  if (q == 0) throw InvalidInput("rational with zero denominator: " + s);
  return p / q;
}

}  // namespace spherodeck
