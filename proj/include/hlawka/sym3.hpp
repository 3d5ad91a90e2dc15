#pragma once

#include <array>

namespace hlawka {

using Mat3x3 = std::array<std::array<double, 3>, 3>;

// Eigendecomposition of a symmetric 3x3 matrix.
// values are sorted descending; vectors[k] is the (orthonormal)
// eigenvector belonging to values[k], stored as a row.
struct Sym3Eigen {
  std::array<double, 3> values;
  std::array<std::array<double, 3>, 3> vectors;
};

// Cyclic Jacobi iteration. Robust for repeated and near-zero eigenvalues,
// which is exactly where the rank-deficient Gram matrices live.
Sym3Eigen sym3_eigen(const Mat3x3& a);

}  // namespace hlawka
