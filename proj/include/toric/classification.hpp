// The rank-one terminal toric Fano 3-folds, the plain-text polytope format
// shared by all datasets, dataset verification, and the P^4 weight searches.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/link.hpp"

namespace toric {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One block of the text format: "n k", k ray lines, optional "C i1 ... in"
/// cone lines with 0-based ray indices. Lines starting with '#' are comments;
/// a "# id" comment right before a block names it.
struct FanText {
  std::string id;
  std::size_t line = 0;
  std::vector<IntVector> rays;
  std::vector<Cone> cones;

  bool is_simplex() const;
  /// Cone lines if present, otherwise the simplex fan (which needs k = n+1).
  Fan fan() const;
};

std::vector<FanText> parse_fan_text(std::istream& in, const std::string& source = "input");
std::vector<FanText> read_fan_file(const std::string& path);
std::string write_fan_text(const std::vector<IntVector>& rays, const std::vector<Cone>& cones = {}, const std::string& id = "");

/// Vertex-matrix export: one polytope per line, written as a bracketed list
/// of integer vectors, e.g. "[[1,0,0],[0,1,0],[0,0,1],[-1,-1,-1]]".
std::vector<FanText> parse_vertex_lists(std::istream& in, const std::string& source = "input");

/// Simplices of a file as web input; non-simplices are a ParseError.
std::vector<WebEntry> load_dataset(const std::string& path);

/// Terminal Fano simplices up to isomorphism: weighted projective spaces with
/// weight sum <= bound, then their terminal quotients by lattice refinements
/// of index m with m * (weight sum) <= bound.
std::vector<WebEntry> terminal_simplices(std::size_t n, Int bound);

/// The toric Mori-Fano 3-folds; bound 25 already finds all eight.
std::vector<WebEntry> classify_dim3(Int bound = 25);

/// Terminal well-formed weighted projective spaces of dimension n with weight
/// sum <= bound, ordered by weights.
std::vector<WebEntry> terminal_wps(std::size_t n, Int bound);

struct Rejection {
  std::size_t entry;
  std::string id;
  std::string reason;
  std::optional<BoxPoint> witness;
};

struct VerificationReport {
  std::size_t entries = 0;
  std::size_t simplices = 0;
  std::size_t terminal = 0;
  std::size_t fano = 0;
  std::size_t wps = 0;   // trivial discriminant
  std::size_t fake = 0;
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;  // (first, repeat)
  std::vector<Rejection> rejected;
};

VerificationReport verify_dataset(const std::vector<FanText>& entries);
std::string report_json(const VerificationReport& r);

struct WeightTuple {
  Int d, a, b, c;
  auto operator<=>(const WeightTuple&) const = default;
};

/// The (d,a,b,c)-weighted blowup of a smooth point of P^4.
IntVector p4_blowup_point(const WeightTuple& t);

struct P4Search {
  std::vector<WeightTuple> flop;  // a+b+c = 4d+1
  std::vector<WeightTuple> flip;  // a+b+c < 4d+1
  // tuples meeting the side conditions before the link-shape filter
  std::size_t flop_literal = 0;
  std::size_t flip_literal = 0;
};

/// Tuples with d <= a <= b <= c <= bound_abc, d <= bound_d, any three of
/// d,a,b,c coprime and a terminal blowup, whose link from P^4 is a complete
/// Type I link starting with a flop (resp. a flip).
std::vector<WeightTuple> p4_flop_search(Int bound_abc, Int bound_d, std::size_t* literal = nullptr);
std::vector<WeightTuple> p4_flip_search(Int bound_abc, Int bound_d, std::size_t* literal = nullptr);
P4Search p4_weight_search(Int bound_abc, Int bound_d);

}  // namespace toric
