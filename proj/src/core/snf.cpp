#include "dgc/snf.hpp"

#include <utility>

namespace dgc {

BigMatrix identity_matrix(int n) {
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  BigMatrix c(n, std::vector<BigInt>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t q = 0; q < p; ++q) c[i][q] += a[i][j] * b[j][q];
    }
  return c;
}

BigInt determinant(BigMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

SmithForm smith_normal_form(const BigMatrix& m, int cols) {
  const int R = static_cast<int>(m.size());
  const int C = cols >= 0 ? cols : (R ? static_cast<int>(m[0].size()) : 0);
  SmithForm f;
  f.D = m;
  f.U = identity_matrix(R);
  f.V = identity_matrix(C);
  auto& A = f.D;

  auto swap_rows = [&](int i, int j) {
    std::swap(A[i], A[j]);
    std::swap(f.U[i], f.U[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : f.V) std::swap(row[i], row[j]);
  };
  // row_i += q * row_j
  auto add_row = [&](int i, int j, const BigInt& q) {
    for (int c = 0; c < C; ++c) A[i][c] += q * A[j][c];
    for (int c = 0; c < R; ++c) f.U[i][c] += q * f.U[j][c];
  };
  auto add_col = [&](int i, int j, const BigInt& q) {
    for (int r = 0; r < R; ++r) A[r][i] += q * A[r][j];
    for (int r = 0; r < C; ++r) f.V[r][i] += q * f.V[r][j];
  };

  const int n = std::min(R, C);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      BigInt best;
      for (int i = t; i < R; ++i)
        for (int j = t; j < C; ++j) {
          if (A[i][j] == 0) continue;
          BigInt v = abs(A[i][j]);
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) goto finished;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (int i = t + 1; i < R; ++i) {
        if (A[i][t] == 0) continue;
        BigInt q = A[i][t] / A[t][t];
        if (q != 0) add_row(i, t, -q);
        if (A[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < C; ++j) {
        if (A[t][j] == 0) continue;
        BigInt q = A[t][j] / A[t][t];
        if (q != 0) add_col(j, t, -q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < R && bad < 0; ++i)
        for (int j = t + 1; j < C; ++j)
          if (A[i][j] % A[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(t, bad, 1);
    }
    if (A[t][t] < 0) {
      for (int c = 0; c < C; ++c) A[t][c] = -A[t][c];
      for (int c = 0; c < R; ++c) f.U[t][c] = -f.U[t][c];
    }
  }
finished:
  f.diagonal.resize(n);
  for (int t = 0; t < n; ++t) f.diagonal[t] = A[t][t];
  return f;
}

}  // namespace dgc
