// Independent reference computations used as test oracles. Nothing here
// shares a code path with the engine beyond the Rational/IntVector types.

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "toric/lattice.hpp"

namespace oracle {

using toric::Int;
using toric::IntVector;
using toric::Rational;

/// Solve sum x_i cols_i = p over Q by Gaussian elimination; nullopt if singular.
inline std::optional<std::vector<Rational>> solve(const std::vector<IntVector>& cols, const IntVector& p) {
  const std::size_t n = cols.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(cols[j][i]);
    a[i][n] = Rational(p[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == Rational(0)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == Rational(0)) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

/// Rational determinant by elimination.
inline Rational det(const std::vector<IntVector>& cols) {
  const std::size_t n = cols.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(cols[j][i]);
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == Rational(0)) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[c], a[piv]);
      d = -d;
    }
    d = d * a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  return d;
}

/// Visit every integer point of the box [lo, hi].
inline void for_each_point(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& f) {
  IntVector p = lo;
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  while (true) {
    f(p);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++p[i] <= hi[i]) break;
      p[i] = lo[i];
    }
    if (i == n) return;
  }
}

/// Lattice points of the half-open parallelepiped, by scanning its bounding box.
inline std::vector<IntVector> scan_box_points(const std::vector<IntVector>& rays) {
  const std::size_t n = rays.size();
  IntVector lo(n), hi(n);
  for (const auto& r : rays)
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] < 0) lo[i] += r[i];
      else hi[i] += r[i];
    }
  std::vector<IntVector> out;
  for_each_point(lo, hi, [&](const IntVector& p) {
    auto t = solve(rays, p);
    if (!t) return;
    for (const auto& x : *t)
      if (x < Rational(0) || x >= Rational(1)) return;
    out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Naive terminality of one simplicial cone: scan the bounding box of the
/// shed simplex conv(0, rays) for lattice points other than 0 and the rays.
inline bool scan_cone_terminal(const std::vector<IntVector>& rays) {
  const std::size_t n = rays.size();
  IntVector lo(n), hi(n);
  for (const auto& r : rays)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], r[i]);
      hi[i] = std::max(hi[i], r[i]);
    }
  bool ok = true;
  for_each_point(lo, hi, [&](const IntVector& p) {
    if (!ok || p.is_zero()) return;
    if (std::find(rays.begin(), rays.end(), p) != rays.end()) return;
    auto t = solve(rays, p);
    Rational s(0);
    for (const auto& x : *t) {
      if (x < Rational(0)) return;
      s += x;
    }
    if (s <= Rational(1)) ok = false;
  });
  return ok;
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Int> determinantal_factors(const std::vector<std::vector<Int>>& m) {
  const std::size_t r = m.size(), c = m[0].size();
  std::vector<Int> D{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Int g = 0;
    std::vector<int> rs(k), cs(k);
    std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> pick;
    // enumerate k-subsets of rows and columns
    std::vector<std::vector<int>> row_sets, col_sets;
    std::function<void(std::vector<int>&, std::size_t, std::size_t, std::vector<std::vector<int>>&)> subsets =
        [&](std::vector<int>& cur, std::size_t start, std::size_t n, std::vector<std::vector<int>>& out) {
          if (cur.size() == k) {
            out.push_back(cur);
            return;
          }
          for (std::size_t i = start; i < n; ++i) {
            cur.push_back(static_cast<int>(i));
            subsets(cur, i + 1, n, out);
            cur.pop_back();
          }
        };
    std::vector<int> cur;
    subsets(cur, 0, r, row_sets);
    subsets(cur, 0, c, col_sets);
    for (const auto& rsel : row_sets)
      for (const auto& csel : col_sets) {
        std::vector<IntVector> cols;
        for (int j : csel) {
          IntVector v(k);
          for (std::size_t i = 0; i < k; ++i) v[i] = m[rsel[i]][j];
          cols.push_back(v);
        }
        Rational d = det(cols);
        g = toric::gcd(g, d.num());
      }
    D.push_back(g);
  }
  std::vector<Int> f;
  for (std::size_t k = 1; k < D.size(); ++k) f.push_back(D[k] == 0 ? 0 : D[k] / D[k - 1]);
  return f;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline Int uniform(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng()); }

/// Random unimodular matrix as a product of elementary operations.
inline toric::IntMatrix random_unimodular(std::size_t n, int steps = 12) {
  auto m = toric::IntMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = uniform(0, n - 1), j = uniform(0, n - 1);
    if (i == j) {
      if (uniform(0, 1)) m.negate_row(i);
      continue;
    }
    m.add_row_multiple(i, j, uniform(-2, 2));
    if (uniform(0, 3) == 0) m.swap_rows(i, j);
  }
  return m;
}

}  // namespace oracle
