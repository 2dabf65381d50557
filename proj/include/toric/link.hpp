// Sarkisov links by the two-ray game: extraction, a chain of flips, flops and
// antiflips, then a divisorial contraction or a Mori fibre space.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toric/extraction.hpp"
#include "toric/two_ray.hpp"

namespace toric {

enum class LinkStepKind { extraction, flip, flop, antiflip, blowdown, mfs };
enum class LinkStatus { complete, bad_antiflip, bad_endpoint };

std::string to_string(LinkStepKind k);
std::string to_string(LinkStatus s);
LinkStepKind parse_link_step_kind(const std::string& s);
LinkStatus parse_link_status(const std::string& s);

struct VarietySummary {
  std::string key;  // normal form
  std::vector<Int> weights;       // sorted
  std::vector<Int> discriminant;
  std::string name;
  std::vector<IntVector> rays;

  bool operator==(const VarietySummary&) const = default;
};

VarietySummary summarize(const SimplexVariety& x);

struct LinkStep {
  LinkStepKind kind;
  std::vector<Int> relation;  // aligned with the model rays
  std::string display;
  std::vector<Cone> model;    // cones of the model after the step (empty at the ends)

  bool operator==(const LinkStep&) const = default;
};

struct FlopReport {
  std::size_t step;  // index into LinkRecord::steps
  std::size_t cones = 0;
  std::optional<GorensteinData> gorenstein;

  bool operator==(const FlopReport&) const = default;
};

struct LinkRecord {
  VarietySummary start;
  IntVector point;
  ExtractionNotation extraction;
  Rational discrepancy;
  std::vector<IntVector> model_rays;  // start rays, then point
  std::vector<LinkStep> steps;
  LinkStatus status = LinkStatus::complete;
  std::optional<BoxPoint> witness;    // lattice point of a non-terminal shed

  std::optional<VarietySummary> target;          // Type I
  std::optional<ExtractionNotation> blowdown;    // in the target's notation
  std::optional<VarietySummary> fibre, base;     // Type II

  std::vector<bool> fano_models;  // Y_1, Y_2, ...
  std::vector<FlopReport> flop_bases;
  std::optional<std::size_t> inverse;  // index in the list passed to pair_inverses

  bool complete() const { return status == LinkStatus::complete; }
  /// 1, 2, or 0 for a bad link.
  int type() const;
  std::vector<const LinkStep*> small_steps() const;
  /// "P(1,2,3,5)", "P^1/P^2", "bad antiflip".
  std::string end_display() const;

  bool operator==(const LinkRecord&) const = default;
};

/// Runs the two-ray game from the extraction at v. Bad links are records,
/// never errors; LatticeError signals a v that is not an extraction.
LinkRecord run_link(const SimplexVariety& x, const IntVector& v);

struct LinkConfig {
  Rational dmax = 5;
  bool dedup_symmetry = true;
  BoundMode bound = BoundMode::discrepancy;
};

std::vector<LinkRecord> enumerate_links(const SimplexVariety& x, const LinkConfig& config);

/// Cross-references Type I records with their reverses; returns the indices
/// of Type I records left unpaired.
std::vector<std::size_t> pair_inverses(std::vector<LinkRecord>& records);

/// The record expected from running the link backwards from its endpoint,
/// up to the relabelling of rays (compared through link_signature).
std::string link_signature(const LinkRecord& r);
std::string reverse_signature(const LinkRecord& r);

/// One-line rendering of the whole link.
std::string link_display(const LinkRecord& r);
/// Table-style row: blowup, small steps, blowdown, end.
std::string table_display(const LinkRecord& r);

struct WebEntry {
  std::string id;
  SimplexVariety variety;
};

struct WebRunConfig {
  LinkConfig link;
  unsigned jobs = 1;
  std::size_t offset = 0;
  std::optional<std::size_t> limit;
};

struct WebSummary {
  std::size_t varieties = 0;
  std::size_t records = 0;
  std::size_t complete = 0;
  std::size_t failures = 0;
};

/// Streams one JSON line per record (and one per failing variety) in dataset
/// order, whatever the completion order of the workers.
WebSummary run_web(const std::vector<WebEntry>& dataset, const WebRunConfig& config, std::ostream& out);

/// JSON serialization; parse_record(record_json(r)) == r.
std::string record_json(const LinkRecord& r, std::optional<std::size_t> variety = std::nullopt, const std::string& id = "");
LinkRecord parse_record(const std::string& line);

}  // namespace toric
