#include "toric/two_ray.hpp"

#include <algorithm>
#include <stdexcept>

namespace toric {

namespace {

Int det2(const IntVector& a, const IntVector& b) { return checked_sub(checked_mul(a[0], b[1]), checked_mul(a[1], b[0])); }

int half(const IntVector& v) { return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0; }

/// Full-turn angular order starting at the positive x-axis.
bool angle_less(const IntVector& a, const IntVector& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return det2(a, b) > 0;
}

bool same_direction(const IntVector& a, const IntVector& b) { return det2(a, b) == 0 && a.dot(b) > 0; }

/// c strictly inside the cone spanned by a and b (a, b independent).
bool strictly_between(const IntVector& a, const IntVector& b, const IntVector& c) {
  Int ab = det2(a, b);
  if (ab == 0) return false;
  Int ac = det2(a, c), cb = det2(c, b);
  if (ab > 0) return ac > 0 && cb > 0;
  return ac < 0 && cb < 0;
}

std::vector<int> indices_where(const std::vector<Int>& v, auto pred) {
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (pred(v[i])) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::flip: return "flip";
    case StepKind::flop: return "flop";
    case StepKind::antiflip: return "antiflip";
    case StepKind::divisorial: return "divisorial";
    case StepKind::fibration: return "fibration";
  }
  return "?";
}

StepKind parse_step_kind(const std::string& s) {
  for (auto k : {StepKind::flip, StepKind::flop, StepKind::antiflip, StepKind::divisorial, StepKind::fibration})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown step kind '" + s + "'");
}

bool is_small(StepKind k) { return k == StepKind::flip || k == StepKind::flop || k == StepKind::antiflip; }

StepKind classify_relation(const std::vector<Int>& relation) {
  std::size_t neg = 0;
  Int sum = 0;
  for (Int b : relation) {
    if (b < 0) ++neg;
    sum = checked_add(sum, b);
  }
  if (neg == 0) return StepKind::fibration;
  if (neg == 1) return StepKind::divisorial;
  if (sum > 0) return StepKind::flip;
  if (sum == 0) return StepKind::flop;
  return StepKind::antiflip;
}

Int WallCrossing::k_degree() const {
  Int s = 0;
  for (Int b : relation) s = checked_add(s, b);
  return s;
}

std::vector<int> WallCrossing::positive() const { return indices_where(relation, [](Int b) { return b > 0; }); }
std::vector<int> WallCrossing::negative() const { return indices_where(relation, [](Int b) { return b < 0; }); }
std::vector<int> WallCrossing::zero() const { return indices_where(relation, [](Int b) { return b == 0; }); }

GaleConfiguration::GaleConfiguration(std::vector<IntVector> rays) : rays_(std::move(rays)) {
  if (rays_.empty()) throw LatticeError("no rays");
  const std::size_t n = rays_[0].size();
  if (rays_.size() != n + 2) throw LatticeError("a rank-two model needs n+2 rays");
  basis_ = kernel_basis(IntMatrix::from_columns(rays_));
  if (basis_.size() != 2) throw LatticeError("rays of rank < n");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    IntVector w{basis_[0][i], basis_[1][i]};
    if (w.is_zero()) throw LatticeError("ray " + to_string(rays_[i]) + " lies in no relation");
    gale_.push_back(w);
  }

  std::vector<IntVector> sorted;
  for (const auto& w : gale_) sorted.push_back(primitive_part(w).vector);
  std::sort(sorted.begin(), sorted.end(), angle_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // The classes lie in an open half-plane; start after the gap wider than pi.
  const std::size_t m = sorted.size();
  std::size_t start = m;
  for (std::size_t i = 0; i < m; ++i) {
    const IntVector& a = sorted[i];
    const IntVector& b = sorted[(i + 1) % m];
    if (m == 1 || det2(a, b) < 0) {
      start = (i + 1) % m;
      break;
    }
  }
  if (start == m || m < 2) throw LatticeError("rays do not span a complete fan: effective cone is not pointed");
  for (std::size_t i = 0; i < m; ++i) dirs_.push_back(sorted[(start + i) % m]);
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (det2(dirs_[i], dirs_[i + 1]) <= 0) throw LatticeError("rays do not span a complete fan: effective cone is not pointed");

  for (std::size_t s = 0; s + 1 < dirs_.size(); ++s) {
    IntVector c = dirs_[s] + dirs_[s + 1];
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < gale_.size(); ++i)
      for (std::size_t j = i + 1; j < gale_.size(); ++j) {
        if (!strictly_between(gale_[i], gale_[j], c)) continue;
        Cone cone;
        for (std::size_t k = 0; k < gale_.size(); ++k)
          if (k != i && k != j) cone.push_back(static_cast<int>(k));
        cones.push_back(std::move(cone));
      }
    std::sort(cones.begin(), cones.end());
    sector_cones_.push_back(std::move(cones));
  }
}

bool GaleConfiguration::is_model(std::size_t sector) const {
  std::vector<bool> used(rays_.size(), false);
  for (const auto& c : sector_cones_[sector])
    for (int i : c) used[i] = true;
  return std::find(used.begin(), used.end(), false) == used.end();
}

std::optional<std::size_t> GaleConfiguration::sector_of(const Fan& fan) const {
  for (std::size_t s = 0; s < sector_cones_.size(); ++s)
    if (sector_cones_[s] == fan.cones()) return s;
  return std::nullopt;
}

WallCrossing GaleConfiguration::wall(std::size_t sector, WallSide side) const {
  const IntVector& d = side == WallSide::lower ? dirs_[sector] : dirs_[sector + 1];
  std::vector<Int> b;
  for (const auto& w : gale_) b.push_back(side == WallSide::lower ? det2(d, w) : det2(w, d));
  Int g = content(b);
  for (Int& x : b) x /= g;
  WallCrossing out{side, b, classify_relation(b)};
  return out;
}

RankTwoModel::RankTwoModel(const Fan& fan) : config_(std::make_shared<GaleConfiguration>(fan.rays())), fan_(fan) {
  auto s = config_->sector_of(fan);
  if (!s) throw FanError("fan is not a chamber of its Gale configuration (not projective)");
  sector_ = *s;
}

RankTwoModel::RankTwoModel(std::shared_ptr<const GaleConfiguration> config, std::size_t sector)
    : config_(std::move(config)), sector_(sector), fan_(config_->rays(), config_->sector_cones(sector)) {}

std::pair<WallCrossing, WallCrossing> RankTwoModel::extremal_crossings() const {
  return {config_->wall(sector_, WallSide::lower), config_->wall(sector_, WallSide::upper)};
}

RankTwoModel RankTwoModel::cross_small(const WallCrossing& c) const {
  if (!is_small(c.kind)) throw LatticeError("cross_small needs a flip, flop or antiflip, got " + to_string(c.kind));
  std::size_t next = c.side == WallSide::lower ? sector_ - 1 : sector_ + 1;
  if (!config_->is_model(next)) throw LatticeError("small crossing leads outside the moving cone");
  return RankTwoModel(config_, next);
}

Blowdown RankTwoModel::contract_divisor(const WallCrossing& c) const {
  if (c.kind != StepKind::divisorial) throw LatticeError("contract_divisor needs a divisorial wall, got " + to_string(c.kind));
  const auto contracted = static_cast<std::size_t>(c.negative()[0]);
  std::vector<int> target_rays;
  std::vector<IntVector> rays;
  Cone centre;
  for (std::size_t i = 0; i < fan_.rays().size(); ++i) {
    if (i == contracted) continue;
    if (c.relation[i] > 0) centre.push_back(static_cast<int>(target_rays.size()));
    target_rays.push_back(static_cast<int>(i));
    rays.push_back(fan_.ray(i));
  }
  return Blowdown{contracted, std::move(target_rays), SimplexVariety(std::move(rays)), std::move(centre), -c.relation[contracted],
                  c.relation};
}

Fibration RankTwoModel::fibration_data(const WallCrossing& c) const {
  if (c.kind != StepKind::fibration) throw LatticeError("fibration_data needs a fibration wall, got " + to_string(c.kind));
  auto fibre_rays = c.positive();
  auto base_rays = c.zero();
  const std::size_t n = fan_.dim();
  std::vector<IntVector> fibre_span;
  for (int i : fibre_rays) fibre_span.push_back(fan_.ray(i));
  SmithData s = smith_form(IntMatrix::from_columns(fibre_span));
  const std::size_t d = s.rank();
  if (d + 1 != fibre_rays.size() || d >= n) throw LatticeError("fibration wall with degenerate support");
  std::vector<IntVector> fibre, base;
  for (int i : fibre_rays) {
    IntVector x = s.U.apply(fan_.ray(i));
    fibre.emplace_back(std::vector<Int>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d)));
  }
  for (int i : base_rays) {
    IntVector x = s.U.apply(fan_.ray(i));
    IntVector img(std::vector<Int>(x.begin() + static_cast<std::ptrdiff_t>(d), x.end()));
    base.push_back(primitive_part(img).vector);
  }
  return Fibration{std::move(fibre_rays), std::move(base_rays), SimplexVariety(std::move(fibre)), SimplexVariety(std::move(base))};
}

FlopBase RankTwoModel::flop_base(const WallCrossing& c) const {
  if (c.kind != StepKind::flop) throw LatticeError("flop_base needs a flop wall, got " + to_string(c.kind));
  const auto& dirs = config_->directions();
  const IntVector& d = c.side == WallSide::lower ? dirs[sector_] : dirs[sector_ + 1];
  const auto& w = config_->gale();
  FlopBase out{fan_.rays(), {}, std::nullopt};
  const int k = static_cast<int>(w.size());
  for (int i = 0; i < k; ++i) {
    if (!same_direction(primitive_part(w[i]).vector, d)) continue;
    Cone cone;
    for (int j = 0; j < k; ++j)
      if (j != i) cone.push_back(j);
    out.cones.push_back(std::move(cone));
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (!strictly_between(w[i], w[j], d)) continue;
      Cone cone;
      for (int m = 0; m < k; ++m)
        if (m != i && m != j) cone.push_back(m);
      out.cones.push_back(std::move(cone));
    }
  std::sort(out.cones.begin(), out.cones.end());
  try {
    out.gorenstein = gorenstein_data(out.rays, out.cones);
  } catch (const LatticeError&) {
    out.gorenstein = std::nullopt;
  }
  return out;
}

}  // namespace toric
