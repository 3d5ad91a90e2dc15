#include "hlawka/sym3.hpp"

#include <algorithm>
#include <cmath>

namespace hlawka {

namespace {

double off_diagonal_sq(const Mat3x3& a) {
  return a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
}

}  // namespace

Sym3Eigen sym3_eigen(const Mat3x3& input) {
  Mat3x3 a = input;
  // v accumulates the rotations; rows end up as eigenvectors.
  Mat3x3 v = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  double frob_sq = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) frob_sq += a[i][j] * a[i][j];
  const double stop = 1e-30 * std::max(frob_sq, 1e-300);

  for (int sweep = 0; sweep < 64 && off_diagonal_sq(a) > stop; ++sweep) {
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a[p][p], aqq = a[q][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        const int r = 3 - p - q;  // the remaining index
        const double arp = a[r][p], arq = a[r][q];
        a[r][p] = a[p][r] = c * arp - s * arq;
        a[r][q] = a[q][r] = s * arp + c * arq;

        for (int k = 0; k < 3; ++k) {
          const double vpk = v[p][k], vqk = v[q][k];
          v[p][k] = c * vpk - s * vqk;
          v[q][k] = s * vpk + c * vqk;
        }
      }
    }
  }

  Sym3Eigen out;
  std::array<int, 3> order = {0, 1, 2};
  std::array<double, 3> diag = {a[0][0], a[1][1], a[2][2]};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return diag[i] > diag[j]; });
  for (int k = 0; k < 3; ++k) {
    out.values[k] = diag[order[k]];
    out.vectors[k] = v[order[k]];
  }
  return out;
}

}  // namespace hlawka
