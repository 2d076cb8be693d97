#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using QMat = std::vector<std::vector<Q>>;

inline int rank(QMat m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  int r = 0;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(r) < rows; ++col) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(r)]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(r) || m[i][col] == 0) continue;
      const Q f = m[i][col] / m[static_cast<std::size_t>(r)][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

inline QMat multiply(const QMat& a, const QMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  QMat out(n, std::vector<Q>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

/// Jordan type of J_n (x) I + I (x) J_m over Q, read off from the ranks of
/// its powers: #blocks of size >= k is rank(N^{k-1}) - rank(N^k).
inline std::vector<int> jordan_type_of_tensor(int n, int m) {
  const int dim = n * m;
  QMat N(static_cast<std::size_t>(dim), std::vector<Q>(static_cast<std::size_t>(dim), 0));
  auto idx = [m](int i, int j) { return static_cast<std::size_t>(i * m + j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      if (i + 1 < n) N[idx(i, j)][idx(i + 1, j)] += 1;
      if (j + 1 < m) N[idx(i, j)][idx(i, j + 1)] += 1;
    }
  std::vector<int> ranks{dim};
  QMat power = N;
  while (ranks.back() > 0) {
    ranks.push_back(rank(power));
    power = multiply(power, N);
  }
  std::vector<int> at_least;  // at_least[k-1] = #blocks of size >= k
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
  std::vector<int> blocks;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (int c = 0; c < at_least[k] - next; ++c) blocks.push_back(static_cast<int>(k + 1));
  }
  std::sort(blocks.rbegin(), blocks.rend());
  return blocks;
}

}  // namespace oracle
