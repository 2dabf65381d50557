#include "toric/classification.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace toric {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Int> parse_ints(const std::string& line, const std::string& source, std::size_t lineno) {
  std::istringstream in(line);
  std::vector<Int> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    Int x = 0;
    try {
      x = std::stoll(tok, &used);
    } catch (const std::logic_error&) {
      throw ParseError(source, lineno, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(source, lineno, "expected an integer, got '" + tok + "'");
    out.push_back(x);
  }
  return out;
}

IntVector p4_ray(std::size_t i) {
  IntVector v(4);
  if (i < 4) v[i] = 1;
  else v = IntVector{-1, -1, -1, -1};
  return v;
}

const SimplexVariety& p4() {
  static const SimplexVariety x({p4_ray(0), p4_ray(1), p4_ray(2), p4_ray(3), p4_ray(4)});
  return x;
}

bool triples_coprime(const WeightTuple& t) {
  const Int w[4] = {t.d, t.a, t.b, t.c};
  for (int skip = 0; skip < 4; ++skip) {
    Int g = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) g = gcd(g, w[i]);
    if (g != 1) return false;
  }
  return true;
}

bool admissible(const WeightTuple& t) { return triples_coprime(t) && is_terminal_extraction(p4().fan(), p4_blowup_point(t)); }

/// Complete Type I link whose first small step has the given kind.
bool starts_with(const WeightTuple& t, LinkStepKind kind) {
  auto link = run_link(p4(), p4_blowup_point(t));
  auto small = link.small_steps();
  return link.type() == 1 && !small.empty() && small[0]->kind == kind;
}

/// Upper triangular Hermite forms of determinant m (rows span an index-m
/// sublattice of Z^n).
void for_each_hermite(std::size_t n, Int m, const std::function<void(const IntMatrix&)>& f) {
  std::vector<Int> diag(n);
  std::function<void(std::size_t, Int)> split = [&](std::size_t i, Int rest) {
    if (i + 1 == n) {
      diag[i] = rest;
      // fill the entries above the diagonal, each reduced modulo its column pivot
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) cells.emplace_back(r, c);
      IntMatrix h(n, n);
      for (std::size_t k = 0; k < n; ++k) h(k, k) = diag[k];
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == cells.size()) {
          f(h);
          return;
        }
        auto [r, c] = cells[k];
        for (Int x = 0; x < diag[c]; ++x) {
          h(r, c) = x;
          fill(k + 1);
        }
        h(r, c) = 0;
      };
      fill(0);
      return;
    }
    for (Int d = 1; d <= rest; ++d)
      if (rest % d == 0) {
        diag[i] = d;
        split(i + 1, rest / d);
      }
  };
  split(0, m);
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

bool FanText::is_simplex() const {
  if (rays.empty() || rays.size() != rays[0].size() + 1) return false;
  return cones.empty() || cones.size() == rays.size();
}

Fan FanText::fan() const {
  if (!cones.empty()) return Fan(rays, cones);
  if (rays.empty() || rays.size() != rays[0].size() + 1) throw FanError("no cone lines and not n+1 rays: cannot infer the fan");
  return Fan::simplex(rays);
}

std::vector<FanText> parse_fan_text(std::istream& in, const std::string& source) {
  std::vector<FanText> out;
  std::string line, pending_id;
  std::size_t lineno = 0;
  FanText* cur = nullptr;
  std::size_t rays_left = 0, dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      pending_id = trim(t.substr(1));
      continue;
    }
    if (rays_left > 0) {
      auto v = parse_ints(t, source, lineno);
      if (v.size() != dim) throw ParseError(source, lineno, "ray has " + std::to_string(v.size()) + " entries, expected " + std::to_string(dim));
      cur->rays.emplace_back(std::move(v));
      --rays_left;
      continue;
    }
    if (t[0] == 'C' || t[0] == 'c') {
      if (!cur) throw ParseError(source, lineno, "cone line before any header");
      auto v = parse_ints(t.substr(1), source, lineno);
      if (v.size() != dim) throw ParseError(source, lineno, "cone needs " + std::to_string(dim) + " ray indices");
      Cone c;
      for (Int i : v) {
        if (i < 0 || static_cast<std::size_t>(i) >= cur->rays.size()) throw ParseError(source, lineno, "ray index " + std::to_string(i) + " out of range");
        c.push_back(static_cast<int>(i));
      }
      std::sort(c.begin(), c.end());
      cur->cones.push_back(std::move(c));
      continue;
    }
    auto h = parse_ints(t, source, lineno);
    if (h.size() != 2 || h[0] < 1 || h[1] < 1) throw ParseError(source, lineno, "expected a header 'n k'");
    out.emplace_back();
    cur = &out.back();
    cur->id = pending_id;
    cur->line = lineno;
    pending_id.clear();
    dim = static_cast<std::size_t>(h[0]);
    rays_left = static_cast<std::size_t>(h[1]);
  }
  if (rays_left > 0) throw ParseError(source, lineno, "file ends inside a ray list");
  if (out.empty()) throw ParseError(source, lineno, "no fan found");
  return out;
}

std::vector<FanText> read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_fan_text(in, path);
}

std::string write_fan_text(const std::vector<IntVector>& rays, const std::vector<Cone>& cones, const std::string& id) {
  std::ostringstream s;
  if (!id.empty()) s << "# " << id << '\n';
  s << (rays.empty() ? 0 : rays[0].size()) << ' ' << rays.size() << '\n';
  for (const auto& r : rays) {
    for (std::size_t i = 0; i < r.size(); ++i) s << (i ? " " : "") << r[i];
    s << '\n';
  }
  for (const auto& c : cones) {
    s << 'C';
    for (int i : c) s << ' ' << i;
    s << '\n';
  }
  return s.str();
}

std::vector<FanText> parse_vertex_lists(std::istream& in, const std::string& source) {
  std::vector<FanText> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    FanText f;
    f.line = lineno;
    f.id = source + ":" + std::to_string(lineno);
    try {
      auto j = nlohmann::json::parse(t);
      for (const auto& v : j) f.rays.emplace_back(v.get<std::vector<Int>>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, lineno, std::string("bad vertex list: ") + e.what());
    }
    if (f.rays.empty()) throw ParseError(source, lineno, "empty vertex list");
    for (const auto& r : f.rays)
      if (r.size() != f.rays[0].size()) throw ParseError(source, lineno, "vertices of different dimensions");
    out.push_back(std::move(f));
  }
  if (out.empty()) throw ParseError(source, lineno, "no polytope found");
  return out;
}

std::vector<WebEntry> load_dataset(const std::string& path) {
  std::vector<WebEntry> out;
  for (const auto& f : read_fan_file(path)) {
    if (!f.is_simplex()) throw ParseError(path, f.line, "entry is not a simplex");
    try {
      SimplexVariety x(f.rays);
      out.push_back({f.id.empty() ? x.name() : f.id, std::move(x)});
    } catch (const LatticeError& e) {
      throw ParseError(path, f.line, e.what());
    }
  }
  return out;
}

std::vector<WebEntry> terminal_wps(std::size_t n, Int bound) {
  std::vector<WebEntry> out;
  std::vector<Int> w(n + 1);
  std::function<void(std::size_t, Int, Int)> rec = [&](std::size_t i, Int lo, Int sum) {
    if (i == n + 1) {
      for (std::size_t skip = 0; skip <= n; ++skip) {
        Int g = 0;
        for (std::size_t k = 0; k <= n; ++k)
          if (k != skip) g = gcd(g, w[k]);
        if (g != 1) return;
      }
      try {
        auto x = weighted_projective_space(w);
        if (is_terminal(x.fan())) out.push_back({x.name(), std::move(x)});
      } catch (const LatticeError&) {
      }
      return;
    }
    const Int left = static_cast<Int>(n + 1 - i);
    for (Int a = lo; sum + a * left <= bound; ++a) {
      w[i] = a;
      rec(i + 1, a, sum + a);
    }
  };
  rec(0, 1, 0);
  return out;
}

std::vector<WebEntry> classify_dim3(Int bound) { return terminal_simplices(3, bound); }

std::vector<WebEntry> terminal_simplices(std::size_t n, Int bound) {
  auto covers = terminal_wps(n, bound);
  std::vector<WebEntry> out;
  std::set<NormalFormKey> seen;
  for (const auto& e : covers)
    if (seen.insert(e.variety.key()).second) out.push_back(e);
  std::vector<WebEntry> fakes;
  for (const auto& e : covers) {
    Int s = 0;
    for (Int w : e.variety.weights()) s += w;
    for (Int m = 2; m * s <= bound; ++m) {
      for_each_hermite(n, m, [&](const IntMatrix& h) {
        std::vector<IntVector> rays;
        for (const auto& r : e.variety.rays()) rays.push_back(primitive_part(h.apply(r)).vector);
        SimplexVariety x(rays);
        if (x.discriminant().empty() || !is_terminal(x.fan())) return;
        if (seen.insert(x.key()).second) fakes.push_back({x.name(), std::move(x)});
      });
    }
  }
  std::sort(fakes.begin(), fakes.end(), [](const WebEntry& a, const WebEntry& b) {
    return std::make_pair(a.variety.sorted_weights(), a.variety.discriminant()) <
           std::make_pair(b.variety.sorted_weights(), b.variety.discriminant());
  });
  out.insert(out.end(), fakes.begin(), fakes.end());
  return out;
}

VerificationReport verify_dataset(const std::vector<FanText>& entries) {
  VerificationReport r;
  std::map<NormalFormKey, std::size_t> first;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& f = entries[i];
    ++r.entries;
    auto reject = [&](const std::string& why, std::optional<BoxPoint> w = std::nullopt) { r.rejected.push_back({i, f.id, why, std::move(w)}); };
    try {
      Fan fan = f.fan();
      auto key = normal_form(fan.rays());
      auto [it, fresh] = first.emplace(key, i);
      if (!fresh) r.duplicates.emplace_back(it->second, i);
      bool ok = true;
      if (f.is_simplex()) {
        ++r.simplices;
        SimplexVariety x(f.rays);
        (x.discriminant().empty() ? r.wps : r.fake) += 1;
      } else {
        reject("not a simplex");
        ok = false;
      }
      if (auto w = terminal_witness(fan)) {
        if (ok) reject("not terminal", w->point);
        ok = false;
      } else {
        ++r.terminal;
      }
      if (is_fano(fan)) ++r.fano;
      else if (ok) reject("not Fano");
    } catch (const LatticeError& e) {
      reject(e.what());
    }
  }
  return r;
}

std::string report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["entries"] = r.entries;
  j["simplices"] = r.simplices;
  j["terminal"] = r.terminal;
  j["fano"] = r.fano;
  j["wps"] = r.wps;
  j["fake"] = r.fake;
  auto dup = nlohmann::ordered_json::array();
  for (auto [a, b] : r.duplicates) dup.push_back({a, b});
  j["duplicates"] = dup;
  auto rej = nlohmann::ordered_json::array();
  for (const auto& x : r.rejected) {
    nlohmann::ordered_json e = {{"entry", x.entry}, {"id", x.id}, {"reason", x.reason}};
    if (x.witness) e["witness"] = x.witness->point.coords();
    rej.push_back(e);
  }
  j["rejected"] = rej;
  return j.dump(2);
}

IntVector p4_blowup_point(const WeightTuple& t) { return {t.d, t.a, t.b, t.c}; }

std::vector<WeightTuple> p4_flop_search(Int bound_abc, Int bound_d, std::size_t* literal) {
  std::vector<WeightTuple> out;
  std::size_t count = 0;
  for (Int d = 1; d <= bound_d; ++d)
    for (Int a = d; 3 * a <= 4 * d + 1 && a <= bound_abc; ++a)
      for (Int b = a; a + 2 * b <= 4 * d + 1 && b <= bound_abc; ++b) {
        WeightTuple t{d, a, b, 4 * d + 1 - a - b};
        if (t.c > bound_abc || !admissible(t)) continue;
        ++count;
        if (starts_with(t, LinkStepKind::flop)) out.push_back(t);
      }
  if (literal) *literal = count;
  return out;
}

std::vector<WeightTuple> p4_flip_search(Int bound_abc, Int bound_d, std::size_t* literal) {
  std::vector<WeightTuple> out;
  std::size_t count = 0;
  for (Int d = 1; d <= bound_d; ++d)
    for (Int a = d; a <= bound_abc && 3 * a < 4 * d + 1; ++a)
      for (Int b = a; b <= bound_abc && a + 2 * b < 4 * d + 1; ++b)
        for (Int c = b; c <= bound_abc && a + b + c < 4 * d + 1; ++c) {
          WeightTuple t{d, a, b, c};
          if (!admissible(t)) continue;
          ++count;
          if (starts_with(t, LinkStepKind::flip)) out.push_back(t);
        }
  if (literal) *literal = count;
  return out;
}

P4Search p4_weight_search(Int bound_abc, Int bound_d) {
  P4Search s;
  s.flop = p4_flop_search(bound_abc, bound_d, &s.flop_literal);
  s.flip = p4_flip_search(bound_abc, bound_d, &s.flip_literal);
  return s;
}

}  // namespace toric
