// Terminal extremal extractions from a rank-one variety, and the blowup /
// blowdown notation "[centre](-r,b,...)".

#pragma once

#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/variety.hpp"

namespace toric {

/// How the extraction bound dmax is measured: by discrepancy psi(v) - 1, or
/// by the largest coefficient b_i / r of v in its cone.
enum class BoundMode { discrepancy, weight };

std::string to_string(BoundMode m);
BoundMode parse_bound_mode(const std::string& s);

struct ExtractionCandidate {
  IntVector point;
  Cone tau;                    // rays of the smallest cone containing point
  Int index = 1;               // r
  std::vector<Int> relation;   // aligned with the rays: r * point = sum b_i s_i
  Rational discrepancy;
  std::vector<Int> centre;     // sorted indices of the top cones containing tau

  /// Coefficients b_i over tau, ascending.
  std::vector<Int> weights() const;
};

/// Smallest cone, relation and centre of v. Requires v != 0.
ExtractionCandidate describe_point(const Fan& fan, const IntVector& v);

/// Terminal extractions with 0 < bound <= dmax, sorted by point. With
/// dedup_symmetry only the lexicographically least point of each orbit of
/// the fan's lattice automorphisms is kept.
std::vector<ExtractionCandidate> candidate_points(const SimplexVariety& x, const Rational& dmax, bool dedup_symmetry = false,
                                                  BoundMode mode = BoundMode::discrepancy);

/// star_subdivide(fan, v) is terminal (fan is assumed terminal away from v).
bool is_terminal_extraction(const Fan& fan, const IntVector& v);

struct ExtractionNotation {
  std::vector<Int> centre;
  std::vector<Int> relation;  // (-r, b ascending)
  std::string display;        // "[1](-1,1,1,1,2)"
  std::string table;          // "(1,1,2)", "1/3(1,1,2)": three-fold table style

  bool operator==(const ExtractionNotation&) const = default;
};

ExtractionNotation notation(const ExtractionCandidate& c);
ExtractionNotation notation(const std::vector<Int>& centre, Int index, std::vector<Int> weights, std::size_t dim);

/// Inverse of notation(...).display.
ExtractionNotation parse_notation(const std::string& display, std::size_t dim);

/// Render "(a,b,c)".
std::string tuple_string(const std::vector<Int>& v);

}  // namespace toric
