#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "reference_links.hpp"
#include "toric/classification.hpp"

using namespace toric;

namespace {

const std::vector<IntVector> kIndexFive{{0, 1, 1}, {-1, 0, -2}, {-1, -2, 1}, {2, 1, 0}};

std::vector<std::string> displays(const LinkRecord& r) {
  std::vector<std::string> out;
  for (const auto& s : r.steps) out.push_back(to_string(s.kind) + " " + s.display);
  return out;
}

std::string fano_flags(const LinkRecord& r) {
  std::string s;
  for (bool b : r.fano_models) s += b ? '1' : '0';
  return s;
}

const std::vector<LinkRecord>& three_fold_web() {
  static const std::vector<LinkRecord> records = [] {
    std::vector<LinkRecord> all;
    for (const auto& e : classify_dim3())
      for (auto& r : enumerate_links(e.variety, {Rational(12), true, BoundMode::discrepancy})) all.push_back(std::move(r));
    pair_inverses(all);
    return all;
  }();
  return records;
}

}  // namespace

TEST_CASE("the index five quotient of P^3 links to P(1,2,3,5)") {
  SimplexVariety x(kIndexFive);
  auto cands = candidate_points(x, Rational(1, 5), true);
  REQUIRE(cands.size() == 1);
  auto r = run_link(x, cands[0].point);
  CHECK(r.extraction.display == "[5](-5,1,2,3)");
  CHECK(r.discrepancy == Rational(1, 5));
  CHECK(displays(r) == std::vector<std::string>{"extraction (-5,1,2,3)", "flip (5,1,-1,-2)", "blowdown (5,2,1,-1)"});
  CHECK(r.complete());
  CHECK(r.type() == 1);
  CHECK(r.target->weights == std::vector<Int>{1, 2, 3, 5});
  CHECK(r.target->discriminant.empty());
  CHECK(r.blowdown->table == "(1,2,5)");
  CHECK(link_display(r) == "P^3/Z5 <- [5](-5,1,2,3) ~> flip (5,1,-1,-2) -> (5,2,1,-1) [1](-1,1,2,5) -> P(1,2,3,5)");
}

TEST_CASE("links from the index five point of P(1,2,3,4,5)") {
  auto x = weighted_projective_space({1, 2, 3, 4, 5});
  std::vector<std::string> got;
  for (const auto& r : enumerate_links(x, {Rational(5), true, BoundMode::discrepancy}))
    if (r.extraction.display == "[5](-5,1,2,3,4)") got.push_back(link_display(r) + " " + fano_flags(r));
  std::sort(got.begin(), got.end());
  std::vector<std::string> want{
      "P(1,2,3,4,5) <- [5](-5,1,2,3,4) -> Mfs P^1/P(1,2,3,4) 1",
      "P(1,2,3,4,5) <- [5](-5,1,2,3,4) ~> antiflip (4,1,-1,-2,-3) ~> flip (3,2,1,-1,-2) -> (3,2,2,1,-1) [1](-1,1,2,2,3) -> "
      "P(1,1,2,3,4) 010",
      "P(1,2,3,4,5) <- [5](-5,1,2,3,4) ~> flip (2,1,0,-1,-1) -> (4,3,2,1,-1) [1](-1,1,2,3,4) -> P(1,1,1,2,3) 10",
      "P(1,2,3,4,5) <- [5](-5,1,2,3,4) ~> flop (3,1,-1,-1,-2) ~> flip (4,3,1,-1,-2) -> Mfs P(1,1,1,2)/P^1 000",
  };
  std::sort(want.begin(), want.end());
  CHECK(got == want);
}

TEST_CASE("two flips between fake weighted projective spaces") {
  CyclicAction a{5, {0, 1, 3, 4, 3}};
  auto x = fake_weighted_projective_space({2, 3, 5, 5, 13}, std::span(&a, 1));
  CHECK(x.name() == "P(2,3,5,5,13)/Z5");
  std::optional<LinkRecord> r;
  for (const auto& c : candidate_points(x, Rational(1, 2)))
    if (notation(c).relation == std::vector<Int>{-25, 1, 5, 6, 14}) r = run_link(x, c.point);
  REQUIRE(r);
  CHECK(displays(*r) == std::vector<std::string>{"extraction (-25,1,5,6,14)", "flip (15,1,-1,-2,-8)", "flip (65,6,1,-7,-34)",
                                                 "blowdown (25,7,5,2,-12)"});
  CHECK(r->target->weights == std::vector<Int>{4, 5, 6, 7, 17});
  CHECK(r->target->discriminant == std::vector<Int>{2});
  CHECK(fano_flags(*r) == "100");
}

TEST_CASE("two antiflips from a point of P^4") {
  auto x = weighted_projective_space({1, 1, 1, 1, 1});
  const auto& v = x.rays();
  auto r = run_link(x, v[0] + 2 * v[1] + 5 * v[2] + 9 * v[3]);
  CHECK(r.extraction.display == "[1](-1,1,2,5,9)");
  CHECK(displays(r) == std::vector<std::string>{"extraction (-1,1,2,5,9)", "antiflip (1,1,-1,-4,-8)", "antiflip (2,1,1,-3,-7)",
                                                "blowdown (5,4,3,1,-4)"});
  CHECK(r.target->name == "P(1,4,7,8,9)");
  CHECK(fano_flags(r) == "001");
}

TEST_CASE("flop base of a smooth point blowup of P(1,1,1,1,2)") {
  auto x = weighted_projective_space({1, 1, 1, 1, 2});
  int found = 0;
  for (const auto& r : enumerate_links(x, {Rational(3), true, BoundMode::discrepancy})) {
    if (r.extraction.display != "[1](-1,1,1,1,1)") continue;
    ++found;
    REQUIRE(r.flop_bases.size() == 1);
    CHECK(r.steps[r.flop_bases[0].step].display == "(2,1,-1,-1,-1)");
    REQUIRE(r.flop_bases[0].gorenstein);
    CHECK(r.flop_bases[0].gorenstein->degree == Rational(567));
    CHECK(r.flop_bases[0].gorenstein->h0 == 115);
    CHECK(r.end_display() == "P^2/P^2");
  }
  CHECK(found == 1);
}

TEST_CASE("the three-fold web against the table") {
  const auto& web = three_fold_web();
  auto check = reference::check_table(web);
  CHECK(check.complete == 57);
  CHECK(check.rows_matched == 34);
  CHECK(check.inverses_matched == 22);
  // Row 13 of the table lists antiflip 1,1,-1,-2; no (1,3,4) blowup of a
  // smooth point of P(1,1,1,2) has that relation.
  REQUIRE(check.problems.size() == 1);
  CHECK(check.problems[0].rfind("row 13 relations differ", 0) == 0);
  CHECK(check.problems[0].find("antiflip 1,1,-1,-3") != std::string::npos);
}

TEST_CASE("type one links run backwards from their endpoints") {
  int checked = 0;
  for (const auto& r : three_fold_web()) {
    if (r.type() != 1) continue;
    const auto& last = r.steps.back().relation;
    auto neg = std::find_if(last.begin(), last.end(), [](Int b) { return b < 0; });
    REQUIRE(neg != last.end());
    const IntVector& contracted = r.model_rays[neg - last.begin()];
    SimplexVariety target(r.target->rays);
    auto back = run_link(target, contracted);
    CHECK(link_signature(back) == reverse_signature(r));
    ++checked;
  }
  CHECK(checked == 46);
}

TEST_CASE("bad antiflips carry a witness") {
  int bad = 0;
  for (const auto& r : three_fold_web()) {
    if (r.status != LinkStatus::bad_antiflip) continue;
    ++bad;
    REQUIRE(r.witness);
    CHECK(r.steps.back().kind == LinkStepKind::antiflip);
    Fan y(r.model_rays, r.steps.back().model);
    CHECK_FALSE(is_terminal(y));
    CHECK(r.type() == 0);
    CHECK(r.end_display() == "bad antiflip");
  }
  CHECK(bad > 0);
}

TEST_CASE("link records round-trip through json") {
  std::vector<LinkRecord> records = three_fold_web();
  auto p4 = weighted_projective_space({1, 1, 1, 1, 2});
  for (auto& r : enumerate_links(p4, {Rational(2), true, BoundMode::discrepancy})) records.push_back(std::move(r));
  for (const auto& r : records) {
    auto line = record_json(r, 3, "x");
    auto back = parse_record(line);
    CHECK(back == r);
    CHECK(record_json(back, 3, "x") == line);
  }
  CHECK_THROWS_AS(parse_record("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_record("{\"start\": 1}"), std::invalid_argument);
  auto line = record_json(records.front());
  const auto at = line.find("\"status\":\"") + 10;
  line.replace(at, line.find('"', at) - at, "finished");
  CHECK_THROWS_AS(parse_record(line), std::invalid_argument);
}

TEST_CASE("non-terminal starts are refused") {
  CHECK_THROWS_AS(enumerate_links(weighted_projective_space({1, 1, 4, 6}), {}), LatticeError);
  CHECK_THROWS_AS(run_link(weighted_projective_space({1, 1, 1, 1}), {1, 0, 0}), LatticeError);
}

TEST_CASE("web output does not depend on the worker count") {
  auto data = classify_dim3();
  data.push_back({"not terminal", weighted_projective_space({1, 1, 4, 6})});
  data.push_back({"P^4", weighted_projective_space({1, 1, 1, 1, 1})});
  WebRunConfig one{{Rational(3), true, BoundMode::discrepancy}, 1, 0, std::nullopt};
  WebRunConfig eight = one;
  eight.jobs = 8;
  std::ostringstream a, b;
  auto sa = run_web(data, one, a);
  auto sb = run_web(data, eight, b);
  CHECK(a.str() == b.str());
  CHECK(sa.varieties == 10);
  CHECK(sa.failures == 1);
  CHECK(sa.records == sb.records);
  CHECK(sa.complete == sb.complete);
  CHECK(a.str().find("{\"variety\":8,\"id\":\"not terminal\",\"error\":") != std::string::npos);

  std::ostringstream pieces;
  for (std::size_t off = 0; off < data.size(); off += 3) {
    WebRunConfig part = eight;
    part.offset = off;
    part.limit = 3;
    run_web(data, part, pieces);
  }
  CHECK(pieces.str() == a.str());
  WebRunConfig past = one;
  past.offset = 100;
  std::ostringstream none;
  CHECK(run_web(data, past, none).varieties == 0);
  CHECK(none.str().empty());
}
