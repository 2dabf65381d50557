#include "toric/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace toric {

namespace {

/// Calls f on every size-k subset of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<int>&)>& f) {
  if (k > n) return;
  std::vector<int> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == static_cast<int>(n - k + i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::vector<Int>> vertex_invariants(std::span<const IntVector> v) {
  const std::size_t n = v[0].size();
  std::vector<std::vector<Int>> inv(v.size());
  for_each_subset(v.size(), n, [&](const std::vector<int>& s) {
    std::vector<IntVector> cols;
    for (int i : s) cols.push_back(v[i]);
    Int d = checked_abs(determinant(IntMatrix::from_columns(cols)));
    for (int i : s) inv[i].push_back(d);
  });
  for (auto& x : inv) std::sort(x.begin(), x.end());
  return inv;
}

std::vector<Int> flatten(const IntMatrix& m) {
  std::vector<Int> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

/// Enumerates every ordering of `order` that only permutes within runs of
/// equal invariants.
void for_each_class_permutation(std::vector<int> order, const std::vector<std::vector<Int>>& inv,
                                const std::function<void(const std::vector<int>&)>& f) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && inv[order[j]] == inv[order[i]]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  for (auto [a, b] : runs) std::sort(order.begin() + a, order.begin() + b);
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == runs.size()) {
      f(order);
      return;
    }
    auto [a, b] = runs[r];
    do {
      rec(r + 1);
    } while (std::next_permutation(order.begin() + a, order.begin() + b));
  };
  rec(0);
}

std::vector<int> invariant_order(const std::vector<std::vector<Int>>& inv) {
  std::vector<int> order(inv.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });
  return order;
}

}  // namespace

NormalFormKey normal_form(std::span<const IntVector> vertices) {
  if (vertices.empty()) throw LatticeError("degenerate configuration");
  const std::size_t n = vertices[0].size();
  if (rank(IntMatrix::from_columns(vertices)) != n) throw LatticeError("degenerate configuration");
  auto inv = vertex_invariants(vertices);
  auto order = invariant_order(inv);

  std::vector<Int> best;
  bool have = false;
  for_each_class_permutation(order, inv, [&](const std::vector<int>& perm) {
    std::vector<IntVector> cols;
    for (int i : perm) cols.push_back(vertices[i]);
    auto h = flatten(hermite_form(IntMatrix::from_columns(cols)));
    if (!have || h < best) {
      best = std::move(h);
      have = true;
    }
  });

  std::ostringstream os;
  os << "n" << n << ";k" << vertices.size() << ";inv";
  for (int i : order) {
    os << '[';
    for (std::size_t j = 0; j < inv[i].size(); ++j) os << (j ? "," : "") << inv[i][j];
    os << ']';
  }
  os << ";H";
  for (std::size_t j = 0; j < best.size(); ++j) os << (j ? "," : "") << best[j];
  return {os.str()};
}

std::vector<LatticeSymmetry> configuration_symmetries(std::span<const IntVector> vertices) {
  const std::size_t n = vertices[0].size();
  const std::size_t k = vertices.size();
  auto inv = vertex_invariants(vertices);

  std::vector<int> basis;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < k && basis.size() < n; ++i) {
    chosen.push_back(vertices[i]);
    if (rank(IntMatrix::from_columns(chosen)) == chosen.size()) {
      basis.push_back(static_cast<int>(i));
    } else {
      chosen.pop_back();
    }
  }
  if (basis.size() != n) throw LatticeError("degenerate configuration");
  IntMatrix vb = IntMatrix::from_columns(chosen);
  IntMatrix adj = adjugate(vb);
  Int det = determinant(vb);

  std::vector<LatticeSymmetry> out;
  std::vector<int> target(n);
  std::vector<bool> taken(k, false);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n) {
      std::vector<IntVector> cols;
      for (int t : target) cols.push_back(vertices[t]);
      IntMatrix a = IntMatrix::from_columns(cols) * adj;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (a(i, j) % det != 0) return;
          a(i, j) /= det;
        }
      Int d = determinant(a);
      if (d != 1 && d != -1) return;
      std::vector<int> perm(k, -1);
      std::vector<bool> hit(k, false);
      for (std::size_t i = 0; i < k; ++i) {
        IntVector img = a.apply(vertices[i]);
        for (std::size_t j = 0; j < k; ++j)
          if (!hit[j] && vertices[j] == img && inv[j] == inv[i]) {
            perm[i] = static_cast<int>(j);
            hit[j] = true;
            break;
          }
        if (perm[i] < 0) return;
      }
      out.push_back({std::move(perm), std::move(a)});
      return;
    }
    int src = basis[pos];
    for (std::size_t t = 0; t < k; ++t) {
      if (taken[t] || inv[t] != inv[src]) continue;
      taken[t] = true;
      target[pos] = static_cast<int>(t);
      rec(pos + 1);
      taken[t] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const LatticeSymmetry& a, const LatticeSymmetry& b) {
    auto is_id = [](const std::vector<int>& p) {
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
      return true;
    };
    bool ia = is_id(a.perm), ib = is_id(b.perm);
    if (ia != ib) return ia;
    return a.perm < b.perm;
  });
  return out;
}

std::vector<LatticeSymmetry> fan_symmetries(const Fan& fan) {
  auto all = configuration_symmetries(fan.rays());
  std::vector<LatticeSymmetry> out;
  for (auto& s : all) {
    bool ok = true;
    for (const auto& c : fan.cones()) {
      Cone img;
      for (int r : c) img.push_back(s.perm[r]);
      if (!fan.find_cone(img)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

GorensteinData gorenstein_data(std::span<const IntVector> rays, std::span<const Cone> facets) {
  const std::size_t n = rays[0].size();
  std::vector<SupportCovector> psi;
  for (const auto& f : facets) {
    std::vector<IntVector> chosen;
    for (int r : f) {
      chosen.push_back(rays[r]);
      if (rank(IntMatrix::from_columns(chosen)) != chosen.size()) chosen.pop_back();
      if (chosen.size() == n) break;
    }
    if (chosen.size() != n) throw LatticeError("dual polytope undefined: degenerate facet");
    SupportCovector s = support_covector(chosen);
    for (std::size_t r = 0; r < rays.size(); ++r) {
      bool in = std::find(f.begin(), f.end(), static_cast<int>(r)) != f.end();
      Int val = s.form.dot(rays[r]);
      if (in ? val != s.height : val >= s.height) throw LatticeError("dual polytope undefined: fan is not the spanning fan of a convex polytope");
    }
    psi.push_back(std::move(s));
  }

  GorensteinData out;
  out.gorenstein = true;
  for (const auto& s : psi)
    if (s.height != 1) out.gorenstein = false;
  // Dual vertex u_F = -form_F / height_F, kept in homogeneous coordinates
  // (-form_F, height_F) so that nothing is scaled to a common denominator.
  std::vector<IntVector> homog;
  for (const auto& s : psi) {
    std::vector<Int> h;
    for (Int x : s.form) h.push_back(checked_neg(x));
    h.push_back(s.height);
    homog.emplace_back(std::move(h));
  }

  std::vector<std::vector<int>> on_ray(rays.size());
  for (std::size_t f = 0; f < facets.size(); ++f)
    for (int r : facets[f]) on_ray[r].push_back(static_cast<int>(f));

  auto affine_dim_of = [&](const std::vector<int>& face) {
    std::vector<IntVector> cols;
    for (int i : face) cols.push_back(homog[i]);
    return rank(IntMatrix::from_columns(cols)) - 1;
  };

  // Pulling triangulation of a face of the dual polytope, faces being sets of
  // dual vertices cut out by rays.
  std::vector<std::vector<int>> simplices;
  std::vector<int> prefix;
  std::function<void(const std::vector<int>&, std::size_t)> triangulate = [&](const std::vector<int>& face, std::size_t k) {
    if (k == 0) {
      prefix.push_back(face[0]);
      simplices.push_back(prefix);
      prefix.pop_back();
      return;
    }
    const int apex = face[0];
    std::set<std::vector<int>> subfaces;
    for (const auto& cut : on_ray) {
      std::vector<int> g;
      std::set_intersection(face.begin(), face.end(), cut.begin(), cut.end(), std::back_inserter(g));
      if (g.empty() || g.size() == face.size() || std::binary_search(g.begin(), g.end(), apex)) continue;
      if (affine_dim_of(g) != k - 1) continue;
      subfaces.insert(std::move(g));
    }
    prefix.push_back(apex);
    for (const auto& g : subfaces) triangulate(g, k - 1);
    prefix.pop_back();
  };

  Rational total(0);
  for (const auto& face : on_ray) {
    if (face.empty() || affine_dim_of(face) != n - 1) continue;
    simplices.clear();
    triangulate(face, n - 1);
    for (const auto& simplex : simplices) {
      std::vector<IntVector> cols;
      Rational denom(1);
      for (int i : simplex) {
        cols.push_back(psi[i].form);
        denom = denom * Rational(psi[i].height);
      }
      total = total + Rational(checked_abs(determinant(IntMatrix::from_columns(cols)))) / denom;
    }
  }
  out.degree = total;

  std::vector<IntVector> dual;
  for (const auto& s : psi) dual.push_back(Int(-1) * s.form);
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn(dual[0][j], psi[0].height), mx = mn;
    for (std::size_t f = 0; f < dual.size(); ++f) {
      Rational c(dual[f][j], psi[f].height);
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    lo[j] = ceil_div(mn.num(), mn.den());
    hi[j] = floor_div(mx.num(), mx.den());
  }
  IntVector m = lo;
  while (true) {
    bool inside = true;
    for (const auto& r : rays)
      if (m.dot(r) < -1) {
        inside = false;
        break;
      }
    if (inside) ++out.h0;
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (++m[j] <= hi[j]) break;
      m[j] = lo[j];
    }
    if (j == n) break;
  }
  return out;
}

GorensteinData gorenstein_data(const Fan& fan) { return gorenstein_data(fan.rays(), fan.cones()); }

}  // namespace toric
