#include "toric/link.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace toric {

namespace {

std::vector<Int> negated(std::vector<Int> v) {
  for (Int& x : v) x = checked_neg(x);
  return v;
}

/// Circuit relation with one zero (a ray off the circuit) dropped, descending.
std::string small_display(std::vector<Int> relation) {
  auto zero = std::find(relation.begin(), relation.end(), 0);
  if (zero != relation.end()) relation.erase(zero);
  std::sort(relation.begin(), relation.end(), std::greater<>());
  return tuple_string(relation);
}

/// Positive coefficients descending, then the contracted ray.
std::string blowdown_display(const std::vector<Int>& relation) {
  std::vector<Int> pos, neg;
  for (Int b : relation) {
    if (b > 0) pos.push_back(b);
    if (b < 0) neg.push_back(b);
  }
  std::sort(pos.begin(), pos.end(), std::greater<>());
  pos.insert(pos.end(), neg.begin(), neg.end());
  return tuple_string(pos);
}

LinkStepKind step_kind(StepKind k) {
  switch (k) {
    case StepKind::flip: return LinkStepKind::flip;
    case StepKind::flop: return LinkStepKind::flop;
    case StepKind::antiflip: return LinkStepKind::antiflip;
    case StepKind::divisorial: return LinkStepKind::blowdown;
    case StepKind::fibration: return LinkStepKind::mfs;
  }
  return LinkStepKind::mfs;
}

LinkStepKind reversed_kind(LinkStepKind k) {
  if (k == LinkStepKind::flip) return LinkStepKind::antiflip;
  if (k == LinkStepKind::antiflip) return LinkStepKind::flip;
  return k;
}

WallSide opposite(WallSide s) { return s == WallSide::lower ? WallSide::upper : WallSide::lower; }

}  // namespace

std::string to_string(LinkStepKind k) {
  switch (k) {
    case LinkStepKind::extraction: return "extraction";
    case LinkStepKind::flip: return "flip";
    case LinkStepKind::flop: return "flop";
    case LinkStepKind::antiflip: return "antiflip";
    case LinkStepKind::blowdown: return "blowdown";
    case LinkStepKind::mfs: return "mfs";
  }
  return "?";
}

std::string to_string(LinkStatus s) {
  switch (s) {
    case LinkStatus::complete: return "complete";
    case LinkStatus::bad_antiflip: return "bad-antiflip";
    case LinkStatus::bad_endpoint: return "bad-endpoint";
  }
  return "?";
}

LinkStepKind parse_link_step_kind(const std::string& s) {
  for (auto k : {LinkStepKind::extraction, LinkStepKind::flip, LinkStepKind::flop, LinkStepKind::antiflip, LinkStepKind::blowdown,
                 LinkStepKind::mfs})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown link step kind '" + s + "'");
}

LinkStatus parse_link_status(const std::string& s) {
  for (auto k : {LinkStatus::complete, LinkStatus::bad_antiflip, LinkStatus::bad_endpoint})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown link status '" + s + "'");
}

VarietySummary summarize(const SimplexVariety& x) {
  return {x.key().bytes, x.sorted_weights(), x.discriminant(), x.name(), x.rays()};
}

int LinkRecord::type() const {
  if (!complete()) return 0;
  return target ? 1 : 2;
}

std::vector<const LinkStep*> LinkRecord::small_steps() const {
  std::vector<const LinkStep*> out;
  for (const auto& s : steps)
    if (s.kind == LinkStepKind::flip || s.kind == LinkStepKind::flop || s.kind == LinkStepKind::antiflip) out.push_back(&s);
  return out;
}

std::string LinkRecord::end_display() const {
  if (status == LinkStatus::bad_antiflip) return "bad antiflip";
  if (target) return (status == LinkStatus::bad_endpoint ? "bad endpoint " : "") + target->name;
  if (fibre && base) return fibre->name + "/" + base->name;
  return "bad endpoint";
}

LinkRecord run_link(const SimplexVariety& x, const IntVector& v) {
  if (!is_terminal_extraction(x.fan(), v)) throw LatticeError(to_string(v) + " is not a terminal extraction");
  ExtractionCandidate cand = describe_point(x.fan(), v);
  if (cand.discrepancy <= Rational(0)) throw LatticeError(to_string(v) + " has non-positive discrepancy");

  LinkRecord rec;
  rec.start = summarize(x);
  rec.point = v;
  rec.extraction = notation(cand);
  rec.discrepancy = cand.discrepancy;

  RankTwoModel model(star_subdivide(x.fan(), v));
  rec.model_rays = model.fan().rays();
  const int last = static_cast<int>(rec.model_rays.size()) - 1;

  WallSide incoming = WallSide::lower;
  {
    auto [lo, hi] = model.extremal_crossings();
    if (hi.kind == StepKind::divisorial && hi.negative() == std::vector<int>{last}) incoming = WallSide::upper;
    else if (!(lo.kind == StepKind::divisorial && lo.negative() == std::vector<int>{last}))
      throw std::logic_error("extraction wall not found for " + to_string(v));
    const auto& in = incoming == WallSide::upper ? hi : lo;
    rec.steps.push_back({LinkStepKind::extraction, in.relation, tuple_string(rec.extraction.relation), model.fan().cones()});
  }
  rec.fano_models.push_back(model.is_fano_model());

  const std::size_t bound = x.dim() + 2;
  for (std::size_t iter = 0; iter <= bound; ++iter) {
    WallCrossing c = model.crossing(opposite(incoming));
    if (is_small(c.kind)) {
      if (iter == bound) break;
      RankTwoModel next = model.cross_small(c);
      rec.steps.push_back({step_kind(c.kind), c.relation, small_display(c.relation), next.fan().cones()});
      if (c.kind == StepKind::flop) {
        auto base = model.flop_base(c);
        rec.flop_bases.push_back({rec.steps.size() - 1, base.cones.size(), base.gorenstein});
      }
      if (c.kind == StepKind::antiflip) {
        if (auto w = terminal_witness(next.fan())) {
          rec.status = LinkStatus::bad_antiflip;
          rec.witness = w->point;
          return rec;
        }
      }
      model = std::move(next);
      rec.fano_models.push_back(model.is_fano_model());
      continue;
    }
    if (c.kind == StepKind::divisorial) {
      Blowdown bd = model.contract_divisor(c);
      rec.steps.push_back({LinkStepKind::blowdown, c.relation, blowdown_display(c.relation), {}});
      rec.target = summarize(bd.target);
      rec.blowdown = notation(describe_point(bd.target.fan(), model.fan().ray(bd.contracted)));
      if (auto w = terminal_witness(bd.target.fan())) {
        rec.status = LinkStatus::bad_endpoint;
        rec.witness = w->point;
      }
      return rec;
    }
    Fibration f = model.fibration_data(c);
    rec.steps.push_back({LinkStepKind::mfs, c.relation, f.fibre.name() + "/" + f.base.name(), {}});
    rec.fibre = summarize(f.fibre);
    rec.base = summarize(f.base);
    return rec;
  }
  throw std::logic_error("two-ray game from " + to_string(v) + " exceeded the chamber bound");
}

std::vector<LinkRecord> enumerate_links(const SimplexVariety& x, const LinkConfig& config) {
  if (auto w = terminal_witness(x.fan())) throw LatticeError(x.name() + " is not terminal: " + to_string(w->point.point));
  std::vector<LinkRecord> out;
  for (const auto& c : candidate_points(x, config.dmax, config.dedup_symmetry, config.bound)) out.push_back(run_link(x, c.point));
  return out;
}

namespace {

std::string end_signature(const std::string& end_key, const std::string& blowdown) { return "I " + blowdown + " " + end_key; }

}  // namespace

std::string link_signature(const LinkRecord& r) {
  std::ostringstream s;
  s << r.start.key << " | " << r.extraction.display;
  for (const auto* st : r.small_steps()) s << " | " << to_string(st->kind) << ' ' << st->display;
  s << " | " << to_string(r.status) << " | ";
  if (r.target && r.blowdown) s << end_signature(r.target->key, r.blowdown->display);
  else if (r.fibre && r.base) s << "II " << r.fibre->key << " " << r.base->key;
  return s.str();
}

std::string reverse_signature(const LinkRecord& r) {
  if (r.type() != 1) throw std::invalid_argument("only complete Type I links have a reverse");
  std::ostringstream s;
  s << r.target->key << " | " << r.blowdown->display;
  auto small = r.small_steps();
  for (auto it = small.rbegin(); it != small.rend(); ++it)
    s << " | " << to_string(reversed_kind((*it)->kind)) << ' ' << small_display(negated((*it)->relation));
  s << " | complete | " << end_signature(r.start.key, r.extraction.display);
  return s.str();
}

std::vector<std::size_t> pair_inverses(std::vector<LinkRecord>& records) {
  std::map<std::string, std::size_t> by_signature;
  for (std::size_t i = 0; i < records.size(); ++i) by_signature.emplace(link_signature(records[i]), i);
  std::vector<std::size_t> unpaired;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    r.inverse.reset();
    if (r.type() != 1) continue;
    auto it = by_signature.find(reverse_signature(r));
    if (it == by_signature.end()) unpaired.push_back(i);
    else r.inverse = it->second;
  }
  return unpaired;
}

std::string link_display(const LinkRecord& r) {
  std::ostringstream s;
  s << r.start.name << " <- " << r.extraction.display;
  for (const auto* st : r.small_steps()) s << " ~> " << to_string(st->kind) << ' ' << st->display;
  if (r.status == LinkStatus::bad_antiflip) return s.str() + " !! bad antiflip";
  const auto& last = r.steps.back();
  if (r.target) s << " -> " << last.display << ' ' << r.blowdown->display << " -> " << r.target->name;
  else s << " -> Mfs " << last.display;
  if (r.status == LinkStatus::bad_endpoint) s << " !! bad endpoint";
  return s.str();
}

std::string table_display(const LinkRecord& r) {
  auto strip = [](const std::string& t) { return t.substr(1, t.size() - 2); };
  std::ostringstream s;
  s << r.extraction.table << " |";
  for (const auto* st : r.small_steps()) s << ' ' << strip(st->display);
  s << " | ";
  if (r.status == LinkStatus::bad_antiflip) return s.str() + "bad antiflip";
  if (r.target) s << r.blowdown->table << " | " << (r.target->key == r.start.key ? "itself" : r.target->name);
  else s << "Mfs | " << r.end_display();
  if (r.status == LinkStatus::bad_endpoint) s << " (bad endpoint)";
  return s.str();
}

}  // namespace toric
