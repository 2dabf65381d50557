#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace toric {

namespace {

std::vector<Cone> all_facets(std::size_t k) {
  std::vector<Cone> out;
  for (std::size_t skip = 0; skip < k; ++skip) {
    Cone c;
    for (std::size_t i = 0; i < k; ++i)
      if (i != skip) c.push_back(static_cast<int>(i));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f = checked_mul(f, static_cast<Int>(i));
  return f;
}

Fan::Fan(std::vector<IntVector> rays, std::vector<Cone> cones) : rays_(std::move(rays)), cones_(std::move(cones)) {
  if (rays_.empty()) throw FanError("fan without rays");
  dim_ = rays_[0].size();
  if (dim_ < 1 || dim_ > 6) throw FanError("unsupported ambient dimension " + std::to_string(dim_));
  for (auto& c : cones_) std::sort(c.begin(), c.end());
  std::sort(cones_.begin(), cones_.end());
  bases_.reserve(cones_.size());
  for (const auto& c : cones_) {
    if (c.size() != dim_) throw FanError("cone with " + std::to_string(c.size()) + " rays in dimension " + std::to_string(dim_));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || static_cast<std::size_t>(c[i]) >= rays_.size()) throw FanError("cone index out of range");
      if (i && c[i] == c[i - 1]) throw FanError("repeated ray in cone");
    }
    std::vector<IntVector> cr;
    for (int i : c) cr.push_back(rays_[i]);
    try {
      bases_.emplace_back(cr);
    } catch (const LatticeError&) {
      throw FanError("cone on linearly dependent rays");
    }
  }
  validate();
}

Fan Fan::simplex(std::vector<IntVector> rays) {
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip < rays.size(); ++skip) {
    Cone c;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (i != skip) c.push_back(static_cast<int>(i));
    cones.push_back(std::move(c));
  }
  return Fan(std::move(rays), std::move(cones));
}

void Fan::validate() const {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != dim_) throw FanError("rays of unequal dimension");
    if (rays_[i].is_zero()) throw FanError("zero ray");
    if (content(rays_[i]) != 1) throw FanError("ray " + to_string(rays_[i]) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (rays_[i] == rays_[j]) throw FanError("repeated ray " + to_string(rays_[i]));
  }
  if (cones_.empty()) throw FanError("fan without cones");
  std::vector<bool> used(rays_.size(), false);
  for (const auto& c : cones_)
    for (int i : c) used[i] = true;
  if (std::find(used.begin(), used.end(), false) != used.end()) throw FanError("ray not contained in any cone");

  // Facet pairing: each facet lies in exactly two cones, on opposite sides.
  std::map<Cone, std::vector<int>> facet_sides;
  const auto facets = all_facets(dim_);
  for (const auto& c : cones_) {
    for (const auto& f : facets) {
      Cone facet;
      for (int k : f) facet.push_back(c[k]);
      int apex = -1;
      for (int r : c)
        if (!std::binary_search(facet.begin(), facet.end(), r)) apex = r;
      std::vector<IntVector> cols;
      for (int r : facet) cols.push_back(rays_[r]);
      cols.push_back(rays_[apex]);
      Int d = determinant(IntMatrix::from_columns(cols));
      facet_sides[facet].push_back(d > 0 ? 1 : -1);
    }
  }
  for (const auto& [facet, sides] : facet_sides) {
    if (sides.size() != 2) throw FanError("facet shared by " + std::to_string(sides.size()) + " cones; fan is not complete");
    if (sides[0] == sides[1]) throw FanError("overlapping cones across a facet");
  }
  // One sheet: an interior point of the first cone lies in no other cone.
  IntVector p(dim_);
  for (int r : cones_[0]) p = p + rays_[r];
  std::size_t hits = 0;
  for (const auto& b : bases_)
    if (b.contains(p)) ++hits;
  if (hits != 1) throw FanError("cones cover space more than once");
}

std::vector<IntVector> Fan::cone_rays(std::size_t cone) const {
  std::vector<IntVector> out;
  for (int i : cones_[cone]) out.push_back(rays_[i]);
  return out;
}

std::optional<std::size_t> Fan::ray_index(const IntVector& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

std::size_t Fan::locate(const IntVector& p) const {
  if (p.size() != dim_) throw LatticeError("point of wrong dimension");
  for (std::size_t i = 0; i < bases_.size(); ++i)
    if (bases_[i].contains(p)) return i;
  throw FanError("point " + to_string(p) + " outside the support of the fan");
}

std::optional<std::size_t> Fan::find_cone(const Cone& cone) const {
  Cone c = cone;
  std::sort(c.begin(), c.end());
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
  if (it != cones_.end() && *it == c) return static_cast<std::size_t>(it - cones_.begin());
  return std::nullopt;
}

std::vector<Rational> SupportCovector::coefficients() const {
  std::vector<Rational> out;
  for (Int x : form) out.emplace_back(x, height);
  return out;
}

SupportCovector support_covector(std::span<const IntVector> cone_rays) {
  RayBasis b(cone_rays);
  IntVector form = b.height_form();
  Int g = gcd(content(form), b.denom());
  SupportCovector psi;
  psi.height = b.denom() / g;
  psi.form = IntVector(form.size());
  for (std::size_t i = 0; i < form.size(); ++i) psi.form[i] = form[i] / g;
  return psi;
}

SupportCovector support_covector(const Fan& fan, std::size_t cone) {
  auto rays = fan.cone_rays(cone);
  return support_covector(rays);
}

Rational discrepancy(const Fan& fan, const IntVector& v) {
  if (v.is_zero()) throw LatticeError("discrepancy of the zero vector");
  std::size_t c = fan.locate(v);
  const RayBasis& b = fan.basis(c);
  IntVector n = b.numerators(v);
  Int s = std::accumulate(n.begin(), n.end(), Int{0}, [](Int a, Int x) { return checked_add(a, x); });
  return Rational(s, b.denom()) - Rational(1);
}

std::optional<BoxPoint> cone_witness(std::span<const IntVector> cone_rays, bool canonical) {
  for (auto& bp : box_points(cone_rays)) {
    if (bp.point.is_zero()) continue;
    Rational h(0);
    for (const auto& t : bp.coefficients) h += t;
    if (canonical ? (h < Rational(1)) : (h <= Rational(1))) return bp;
  }
  return std::nullopt;
}

namespace {

std::optional<SingularityWitness> fan_witness(const Fan& fan, bool canonical) {
  for (std::size_t c = 0; c < fan.cones().size(); ++c) {
    auto rays = fan.cone_rays(c);
    if (auto w = cone_witness(rays, canonical)) {
      Rational h(0);
      for (const auto& t : w->coefficients) h += t;
      return SingularityWitness{c, std::move(*w), h};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<SingularityWitness> terminal_witness(const Fan& fan) { return fan_witness(fan, false); }

bool is_terminal(const Fan& fan) { return !fan_witness(fan, false); }

bool is_canonical(const Fan& fan) { return !fan_witness(fan, true); }

bool is_fano(const Fan& fan) {
  for (std::size_t c = 0; c < fan.cones().size(); ++c) {
    const auto& cone = fan.cones()[c];
    SupportCovector psi = support_covector(fan, c);
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      if (std::binary_search(cone.begin(), cone.end(), static_cast<int>(r))) continue;
      if (psi.form.dot(fan.ray(r)) >= psi.height) return false;
    }
  }
  return true;
}

Fan star_subdivide(const Fan& fan, const IntVector& v) {
  if (v.is_zero()) throw LatticeError("cannot subdivide at the zero vector");
  if (content(v) != 1) throw LatticeError("subdividing vector " + to_string(v) + " is not primitive");
  if (fan.ray_index(v)) throw FanError("vector " + to_string(v) + " is already a ray of the fan");
  std::vector<IntVector> rays = fan.rays();
  const int k = static_cast<int>(rays.size());
  rays.push_back(v);
  std::vector<Cone> cones;
  for (std::size_t c = 0; c < fan.cones().size(); ++c) {
    const auto& cone = fan.cones()[c];
    IntVector n = fan.basis(c).numerators(v);
    bool inside = std::all_of(n.begin(), n.end(), [](Int x) { return x >= 0; });
    if (!inside) {
      cones.push_back(cone);
      continue;
    }
    for (std::size_t i = 0; i < cone.size(); ++i) {
      if (n[i] == 0) continue;
      Cone nc = cone;
      nc[i] = k;
      cones.push_back(std::move(nc));
    }
  }
  return Fan(std::move(rays), std::move(cones));
}

Rational shed_volume(const Fan& fan) {
  Int total = 0;
  for (std::size_t c = 0; c < fan.cones().size(); ++c) total = checked_add(total, fan.basis(c).denom());
  return {total, factorial(fan.dim())};
}

}  // namespace toric
