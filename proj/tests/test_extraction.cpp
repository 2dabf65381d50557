#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "toric/extraction.hpp"
#include "toric/polytope.hpp"

using namespace toric;

namespace {

std::set<std::string> displays(const std::vector<ExtractionCandidate>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(notation(c).display);
  return out;
}

std::set<std::string> tables(const std::vector<ExtractionCandidate>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(notation(c).table);
  return out;
}

/// Every lattice point of the box, checked with a full subdivision.
std::set<IntVector> brute_force(const SimplexVariety& x, const Rational& dmax, BoundMode mode) {
  const std::size_t n = x.dim();
  Int reach = 0;
  for (const auto& r : x.rays())
    for (Int c : r) reach = std::max(reach, checked_abs(c));
  const Int bound = reach * (Rational(1) + dmax).ceil();
  std::set<IntVector> out;
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) lo[i] = -bound, hi[i] = bound;
  oracle::for_each_point(lo, hi, [&](const IntVector& p) {
    if (p.is_zero() || content(p) != 1 || x.fan().ray_index(p)) return;
    auto c = describe_point(x.fan(), p);
    if (c.discrepancy <= Rational(0)) return;
    if (mode == BoundMode::discrepancy && c.discrepancy > dmax) return;
    if (mode == BoundMode::weight && *std::max_element(c.relation.begin(), c.relation.end()) > dmax) return;
    if (is_terminal(star_subdivide(x.fan(), p))) out.insert(p);
  });
  return out;
}

}  // namespace

TEST_CASE("notation strings") {
  auto a = notation({1}, 1, {2, 1, 1, 1}, 4);
  CHECK(a.display == "[1](-1,1,1,1,2)");
  CHECK(a.relation == std::vector<Int>{-1, 1, 1, 1, 2});
  auto b = notation({1}, 1, {1, 1}, 3);
  CHECK(b.table == "(1,1,0)");
  auto c = notation({3}, 3, {2, 1, 1}, 3);
  CHECK(c.table == "1/3(1,1,2)");
  for (std::string s : {"[1](-1,1,1,1,2)", "[1,1](-1,1,1,1)", "[3](-3,1,1,1,2)", "[2,4](-2,1,1,1)"})
    CHECK(parse_notation(s, 4).display == s);
  CHECK_THROWS(parse_notation("(1,2)", 4));
  CHECK_THROWS(parse_notation("[1](1,2,3)", 4));
  CHECK_THROWS(parse_notation("[1](-1,x)", 4));
}

TEST_CASE("describe a point") {
  auto x = weighted_projective_space({1, 1, 1, 1});
  // The sum of two rays lies on a two-dimensional face of index one.
  auto c = describe_point(x.fan(), x.rays()[0] + x.rays()[1]);
  CHECK(c.tau == Cone{0, 1});
  CHECK(c.index == 1);
  CHECK(c.discrepancy == Rational(1));
  CHECK(c.centre == std::vector<Int>{1, 1});
  CHECK(notation(c).table == "(1,1,0)");
  CHECK(notation(c).display == "[1,1](-1,1,1)");
}

TEST_CASE("candidate points agree with a brute-force scan") {
  const std::vector<std::vector<Int>> weights{{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 3}, {1, 2, 3, 5}, {1, 3, 4, 5}};
  for (const auto& w : weights) {
    auto x = weighted_projective_space(w);
    for (auto mode : {BoundMode::discrepancy, BoundMode::weight}) {
      const Rational dmax = mode == BoundMode::discrepancy ? Rational(2) : Rational(3);
      std::set<IntVector> got;
      for (const auto& c : candidate_points(x, dmax, false, mode)) got.insert(c.point);
      CHECK(got == brute_force(x, dmax, mode));
    }
  }
  SimplexVariety fake({{0, 1, 1}, {-1, 0, -2}, {-1, -2, 1}, {2, 1, 0}});
  std::set<IntVector> got;
  for (const auto& c : candidate_points(fake, Rational(3), false)) got.insert(c.point);
  CHECK(got == brute_force(fake, Rational(3), BoundMode::discrepancy));
  CHECK(got.size() == 4);
  CHECK(displays(candidate_points(fake, Rational(3), true)) == std::set<std::string>{"[5](-5,1,2,3)"});
}

TEST_CASE("symmetry reduction picks one point per orbit") {
  for (const auto& w : std::vector<std::vector<Int>>{{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 3}}) {
    auto x = weighted_projective_space(w);
    auto all = candidate_points(x, Rational(3), false);
    auto reps = candidate_points(x, Rational(3), true);
    auto syms = fan_symmetries(x.fan());
    std::set<IntVector> orbits;
    for (const auto& r : reps)
      for (const auto& s : syms) orbits.insert(s.matrix.apply(r.point));
    std::set<IntVector> points;
    for (const auto& c : all) points.insert(c.point);
    CHECK(orbits == points);
    // Distinct representatives lie in distinct orbits.
    std::size_t total = 0;
    for (const auto& r : reps) {
      std::set<IntVector> orbit;
      for (const auto& s : syms) orbit.insert(s.matrix.apply(r.point));
      total += orbit.size();
    }
    CHECK(total == points.size());
  }
}

TEST_CASE("three-fold extractions include the table blowups") {
  auto p3 = candidate_points(weighted_projective_space({1, 1, 1, 1}), Rational(12), true);
  auto t = tables(p3);
  for (std::string s : {"(1,1,0)", "(1,1,1)", "(1,1,2)", "(1,2,3)", "(1,2,5)"}) CHECK(t.count(s));
  auto k = tables(candidate_points(weighted_projective_space({1, 2, 3, 5}), Rational(1), true));
  for (std::string s : {"1/5(1,2,3)", "1/3(1,1,2)", "1/2(1,1,1)"}) CHECK(k.count(s));
  CHECK_FALSE(k.count("(1,1,0)"));
}

TEST_CASE("four-fold extraction notation") {
  auto p4 = displays(candidate_points(weighted_projective_space({1, 1, 1, 1, 1}), Rational(5), true));
  CHECK(p4.count("[1](-1,1,1,1,2)"));
  CHECK(p4.count("[1](-1,1,1,2,2)"));
  CHECK(p4.count("[1,1](-1,1,1,1)"));
  CHECK(displays(candidate_points(weighted_projective_space({1, 1, 1, 2, 3}), Rational(1), true)).count("[3](-3,1,1,1,2)"));
  CHECK(displays(candidate_points(weighted_projective_space({1, 1, 1, 2, 2}), Rational(1), true)).count("[2,2](-2,1,1,1)"));
  CHECK(displays(candidate_points(weighted_projective_space({1, 1, 2, 3, 4}), Rational(1), true)).count("[2,4](-2,1,1,1)"));
  auto x = weighted_projective_space({1, 1, 3, 4, 7});
  REQUIRE(is_terminal(x.fan()));
  CHECK(displays(candidate_points(x, Rational(1), true)).count("[4](-2,1,1,1,1)"));
}
