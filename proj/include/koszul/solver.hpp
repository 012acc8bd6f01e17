#pragma once

#include "koszul/rational.hpp"

#include <vector>

namespace koszul {

struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};

/// Exact Gaussian elimination for A x = b over the rationals. Returns a
/// particular solution and a nullspace basis when consistent.
inline LinearSolution solve_exact(std::vector<std::vector<Rational>> a,
                                  std::vector<Rational> b) {
  LinearSolution sol;
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  if (!rows) {
    // No constraints: everything is free.
    sol.consistent = true;
    return sol;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = a[r][c];
    for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] /= inv;
    b[r] /= inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || a[rr][c] == 0) continue;
      Rational f = a[rr][c];
      for (std::size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
      b[rr] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t rr = r; rr < rows; ++rr)
    if (b[rr] != 0) return sol;  // inconsistent
  sol.consistent = true;
  sol.particular.assign(cols, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    sol.particular[pivot_col[i]] = b[i];
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -a[i][c];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

/// Dense exact matrix inverse; empty result when singular.
inline std::vector<std::vector<Rational>> invert_matrix(
    std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return {};
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational d = m[c][c];
    for (std::size_t cc = 0; cc < n; ++cc) {
      m[c][cc] /= d;
      inv[c][cc] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t cc = 0; cc < n; ++cc) {
        m[r][cc] -= f * m[c][cc];
        inv[r][cc] -= f * inv[c][cc];
      }
    }
  }
  return inv;
}

}  // namespace koszul
