#pragma once

#include <vector>

#include "spherodeck/lie_algebra.hpp"

namespace testsup {

using spherodeck::MatrixXd;

inline MatrixXd unit(int n, int i, int j) {
  MatrixXd m = MatrixXd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// sl(2,R) basis {H, E, F}.
inline std::vector<MatrixXd> sl2_basis() {
  MatrixXd h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  return {h, e, f};
}

/// Embed an m x m matrix as a diagonal block at offset in an n x n zero matrix.
inline MatrixXd block_embed(const MatrixXd& m, int offset, int n) {
  MatrixXd out = MatrixXd::Zero(n, n);
  out.block(offset, offset, m.rows(), m.cols()) = m;
  return out;
}

/// Basis of sl(2,R)^p, block diagonal in 2p x 2p matrices.
inline std::vector<MatrixXd> sl2_power_basis(int p) {
  std::vector<MatrixXd> out;
  for (int f = 0; f < p; ++f)
    for (const auto& b : sl2_basis()) out.push_back(block_embed(b, 2 * f, 2 * p));
  return out;
}

/// gl(2,R) + gl(1,R) block diagonal in 3 x 3 matrices.
inline std::vector<MatrixXd> gl2_gl1_basis() {
  std::vector<MatrixXd> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.push_back(unit(3, i, j));
  out.push_back(unit(3, 2, 2));
  return out;
}

/// sp(2,R) in the standard 4x4 model: [X1,X2,X3] = [[X1,X2],[X3,-X1^T]]
/// with X2, X3 symmetric.
inline MatrixXd sp2_elem(const MatrixXd& x1, const MatrixXd& x2, const MatrixXd& x3) {
  MatrixXd out = MatrixXd::Zero(4, 4);
  out.block(0, 0, 2, 2) = x1;
  out.block(0, 2, 2, 2) = x2;
  out.block(2, 2, 2, 2) = -x1.transpose();
  out.block(2, 0, 2, 2) = x3;
  return out;
}

inline std::vector<MatrixXd> sp2_basis() {
  std::vector<MatrixXd> out;
  const MatrixXd z = MatrixXd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.push_back(sp2_elem(unit(2, i, j), z, z));
  std::vector<MatrixXd> sym = {unit(2, 0, 0), unit(2, 0, 1) + unit(2, 1, 0), unit(2, 1, 1)};
  for (const auto& s : sym) out.push_back(sp2_elem(z, s, z));
  for (const auto& s : sym) out.push_back(sp2_elem(z, z, s));
  return out;
}

}  // namespace testsup
