#include "toric/extraction.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "toric/polytope.hpp"

namespace toric {

namespace {

bool contains_all(const Cone& cone, const Cone& face) { return std::includes(cone.begin(), cone.end(), face.begin(), face.end()); }

/// Calls f(m) for every m in Z_{>=0}^n with sum m <= total and m_i <= cap_i.
template <class F>
void for_each_offset(std::size_t n, Int total, const std::vector<Int>& cap, F&& f) {
  std::vector<Int> m(n, 0);
  Int sum = 0;
  while (true) {
    f(m);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (sum < total && m[i] < cap[i]) {
        ++m[i];
        ++sum;
        break;
      }
      sum -= m[i];
      m[i] = 0;
    }
    if (i == n) break;
  }
}

Rational bound_value(const ExtractionCandidate& c, BoundMode mode) {
  if (mode == BoundMode::discrepancy) return c.discrepancy;
  Int top = 0;
  for (Int b : c.relation) top = std::max(top, b);
  return top;
}

}  // namespace

std::string to_string(BoundMode m) { return m == BoundMode::discrepancy ? "discrepancy" : "weight"; }

BoundMode parse_bound_mode(const std::string& s) {
  if (s == "discrepancy") return BoundMode::discrepancy;
  if (s == "weight") return BoundMode::weight;
  throw std::invalid_argument("unknown bound mode '" + s + "'");
}

std::vector<Int> ExtractionCandidate::weights() const {
  std::vector<Int> w;
  for (int i : tau) w.push_back(relation[i]);
  std::sort(w.begin(), w.end());
  return w;
}

ExtractionCandidate describe_point(const Fan& fan, const IntVector& v) {
  if (v.is_zero()) throw LatticeError("cannot extract the origin");
  const std::size_t k = fan.locate(v);
  const auto& basis = fan.basis(k);
  IntVector num = basis.numerators(v);
  const Cone& cone = fan.cones()[k];
  ExtractionCandidate c;
  c.point = v;
  Int g = basis.denom();
  for (Int x : num) g = gcd(g, x);
  c.index = basis.denom() / g;
  c.relation.assign(fan.rays().size(), 0);
  Int psi = 0;
  for (std::size_t i = 0; i < cone.size(); ++i) {
    if (num[i] == 0) continue;
    c.tau.push_back(cone[i]);
    c.relation[cone[i]] = num[i] / g;
    psi = checked_add(psi, num[i] / g);
  }
  std::sort(c.tau.begin(), c.tau.end());
  c.discrepancy = Rational(psi, c.index) - Rational(1);
  for (std::size_t j = 0; j < fan.cones().size(); ++j)
    if (contains_all(fan.cones()[j], c.tau)) c.centre.push_back(fan.basis(j).denom());
  std::sort(c.centre.begin(), c.centre.end());
  return c;
}

bool is_terminal_extraction(const Fan& fan, const IntVector& v) {
  if (v.is_zero() || content(v) != 1 || fan.ray_index(v)) return false;
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    const auto& basis = fan.basis(k);
    if (!basis.contains(v)) continue;
    IntVector num = basis.numerators(v);
    auto rays = fan.cone_rays(k);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (num[i] == 0) continue;
      auto sub = rays;
      sub[i] = v;
      if (cone_witness(sub, false)) return false;
    }
  }
  return true;
}

std::vector<ExtractionCandidate> candidate_points(const SimplexVariety& x, const Rational& dmax, bool dedup_symmetry,
                                                  BoundMode mode) {
  const Fan& fan = x.fan();
  const std::size_t n = fan.dim();
  std::map<IntVector, ExtractionCandidate> found;
  for (std::size_t k = 0; k < fan.cones().size(); ++k) {
    auto rays = fan.cone_rays(k);
    for (const auto& bp : box_points(rays)) {
      Rational h = 0;
      for (const auto& t : bp.coefficients) h += t;
      Int total = 0;
      std::vector<Int> cap(n, 0);
      if (mode == BoundMode::discrepancy) {
        total = (Rational(1) + dmax - h).floor();
        for (auto& c : cap) c = total;
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          cap[i] = (dmax - bp.coefficients[i]).floor();
          total = checked_add(total, std::max<Int>(cap[i], 0));
        }
      }
      if (total < 0 || std::any_of(cap.begin(), cap.end(), [](Int c) { return c < 0; })) continue;
      for_each_offset(n, total, cap, [&](const std::vector<Int>& m) {
        IntVector p = bp.point;
        for (std::size_t i = 0; i < n; ++i)
          if (m[i]) p = p + m[i] * rays[i];
        if (p.is_zero() || found.count(p) || content(p) != 1 || fan.ray_index(p)) return;
        ExtractionCandidate c = describe_point(fan, p);
        if (c.discrepancy <= Rational(0)) return;
        if (bound_value(c, mode) > dmax) return;
        if (!is_terminal_extraction(fan, p)) return;
        found.emplace(p, std::move(c));
      });
    }
  }
  std::vector<ExtractionCandidate> out;
  if (!dedup_symmetry) {
    for (auto& [p, c] : found) out.push_back(std::move(c));
    return out;
  }
  auto syms = fan_symmetries(fan);
  for (auto& [p, c] : found) {
    bool least = true;
    for (const auto& s : syms)
      if (s.matrix.apply(p) < p) {
        least = false;
        break;
      }
    if (least) out.push_back(std::move(c));
  }
  return out;
}

std::string tuple_string(const std::vector<Int>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

ExtractionNotation notation(const std::vector<Int>& centre, Int index, std::vector<Int> weights, std::size_t dim) {
  std::sort(weights.begin(), weights.end());
  ExtractionNotation out;
  out.centre = centre;
  out.relation.push_back(-index);
  out.relation.insert(out.relation.end(), weights.begin(), weights.end());
  std::ostringstream d;
  d << '[';
  for (std::size_t i = 0; i < centre.size(); ++i) d << (i ? "," : "") << centre[i];
  d << ']' << tuple_string(out.relation);
  out.display = d.str();
  if (index == 1) {
    auto padded = weights;
    padded.resize(std::max(padded.size(), dim), 0);
    out.table = tuple_string(padded);
  } else {
    out.table = "1/" + std::to_string(index) + tuple_string(weights);
  }
  return out;
}

ExtractionNotation notation(const ExtractionCandidate& c) { return notation(c.centre, c.index, c.weights(), c.relation.size() - 1); }

ExtractionNotation parse_notation(const std::string& display, std::size_t dim) {
  auto fail = [&] { return std::invalid_argument("malformed extraction notation '" + display + "'"); };
  auto close = display.find(']');
  if (display.empty() || display[0] != '[' || close == std::string::npos) throw fail();
  auto ints = [&](const std::string& body) {
    std::vector<Int> v;
    std::stringstream s(body);
    std::string item;
    while (std::getline(s, item, ',')) {
      std::size_t used = 0;
      Int x = std::stoll(item, &used);
      if (used != item.size()) throw fail();
      v.push_back(x);
    }
    return v;
  };
  std::string rest = display.substr(close + 1);
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') throw fail();
  std::vector<Int> centre, rel;
  try {
    centre = ints(display.substr(1, close - 1));
    rel = ints(rest.substr(1, rest.size() - 2));
  } catch (const std::logic_error&) {
    throw fail();
  }
  if (rel.size() < 2 || rel[0] >= 0) throw fail();
  return notation(centre, -rel[0], std::vector<Int>(rel.begin() + 1, rel.end()), dim);
}

}  // namespace toric
