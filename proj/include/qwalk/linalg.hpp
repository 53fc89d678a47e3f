#pragma once

#include <vector>

#include "rational.hpp"

namespace qwalk {

using QMatrix = std::vector<std::vector<Rat>>;

// Gaussian elimination over Q.
inline int rank_q(QMatrix m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (is_zero(m[i][c])) continue;
      Rat f = m[i][c] / m[r][c];
      for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline Rat det_q(QMatrix m) {
  const int n = static_cast<int>(m.size());
  Rat det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(m[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      Rat f = m[i][c] / m[c][c];
      for (int k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace qwalk
