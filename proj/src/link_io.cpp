#include <atomic>
#include <condition_variable>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "toric/link.hpp"

namespace toric {

using json = nlohmann::ordered_json;

namespace {

json ints(const std::vector<Int>& v) { return json(v); }
json vec(const IntVector& v) { return json(v.coords()); }
json vecs(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

IntVector to_vec(const json& j) { return IntVector(j.get<std::vector<Int>>()); }
std::vector<IntVector> to_vecs(const json& j) {
  std::vector<IntVector> out;
  for (const auto& v : j) out.push_back(to_vec(v));
  return out;
}

json summary_json(const VarietySummary& s) {
  return {{"key", s.key}, {"name", s.name}, {"weights", ints(s.weights)}, {"discriminant", ints(s.discriminant)}, {"rays", vecs(s.rays)}};
}

VarietySummary to_summary(const json& j) {
  return {j.at("key").get<std::string>(), j.at("weights").get<std::vector<Int>>(), j.at("discriminant").get<std::vector<Int>>(),
          j.at("name").get<std::string>(), to_vecs(j.at("rays"))};
}

json notation_json(const ExtractionNotation& n) {
  return {{"centre_weights", ints(n.centre)}, {"index", -n.relation.at(0)}, {"relation", ints(n.relation)}, {"notation", n.display},
          {"table", n.table}};
}

ExtractionNotation to_notation(const json& j) {
  return {j.at("centre_weights").get<std::vector<Int>>(), j.at("relation").get<std::vector<Int>>(), j.at("notation").get<std::string>(),
          j.at("table").get<std::string>()};
}

json rational(const Rational& q) { return q.str(); }

}  // namespace

std::string record_json(const LinkRecord& r, std::optional<std::size_t> variety, const std::string& id) {
  json j;
  if (variety) j["variety"] = *variety;
  if (!id.empty()) j["id"] = id;
  j["start"] = summary_json(r.start);
  json ex = notation_json(r.extraction);
  ex["point"] = vec(r.point);
  ex["discrepancy"] = rational(r.discrepancy);
  j["extraction"] = ex;
  j["model_rays"] = vecs(r.model_rays);
  json steps = json::array();
  for (const auto& s : r.steps) {
    json cones = json::array();
    for (const auto& c : s.model) cones.push_back(c);
    steps.push_back({{"kind", to_string(s.kind)}, {"relation", ints(s.relation)}, {"display", s.display}, {"model", cones}});
  }
  j["steps"] = steps;
  j["status"] = to_string(r.status);
  if (r.witness) {
    json t = json::array();
    for (const auto& c : r.witness->coefficients) t.push_back(rational(c));
    j["witness"] = {{"point", vec(r.witness->point)}, {"coefficients", t}};
  } else {
    j["witness"] = nullptr;
  }
  json end;
  end["type"] = r.type();
  if (r.target) {
    end["target"] = summary_json(*r.target);
    end["blowdown"] = notation_json(*r.blowdown);
  }
  if (r.fibre) {
    end["fibre"] = summary_json(*r.fibre);
    end["base"] = summary_json(*r.base);
  }
  j["end"] = end;
  json flops = json::array();
  for (const auto& f : r.flop_bases) {
    json fj = {{"step", f.step}, {"cones", f.cones}};
    if (f.gorenstein) {
      fj["degree"] = rational(f.gorenstein->degree);
      fj["h0"] = f.gorenstein->h0;
      fj["gorenstein"] = f.gorenstein->gorenstein;
    }
    flops.push_back(fj);
  }
  j["midpoints"] = {{"fano_models", r.fano_models}, {"flop_bases", flops}};
  j["inverse_of"] = r.inverse ? json(*r.inverse) : json(nullptr);
  j["display"] = link_display(r);
  return j.dump();
}

LinkRecord parse_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("link record: ") + e.what());
  }
  try {
    LinkRecord r;
    r.start = to_summary(j.at("start"));
    const auto& ex = j.at("extraction");
    r.extraction = to_notation(ex);
    r.point = to_vec(ex.at("point"));
    r.discrepancy = Rational::parse(ex.at("discrepancy").get<std::string>());
    r.model_rays = to_vecs(j.at("model_rays"));
    for (const auto& s : j.at("steps")) {
      std::vector<Cone> model;
      for (const auto& c : s.at("model")) model.push_back(c.get<Cone>());
      r.steps.push_back({parse_link_step_kind(s.at("kind").get<std::string>()), s.at("relation").get<std::vector<Int>>(),
                         s.at("display").get<std::string>(), std::move(model)});
    }
    r.status = parse_link_status(j.at("status").get<std::string>());
    if (!j.at("witness").is_null()) {
      BoxPoint w;
      w.point = to_vec(j["witness"].at("point"));
      for (const auto& c : j["witness"].at("coefficients")) w.coefficients.push_back(Rational::parse(c.get<std::string>()));
      r.witness = w;
    }
    const auto& end = j.at("end");
    if (end.contains("target")) {
      r.target = to_summary(end["target"]);
      r.blowdown = to_notation(end.at("blowdown"));
    }
    if (end.contains("fibre")) {
      r.fibre = to_summary(end["fibre"]);
      r.base = to_summary(end.at("base"));
    }
    const auto& mid = j.at("midpoints");
    r.fano_models = mid.at("fano_models").get<std::vector<bool>>();
    for (const auto& f : mid.at("flop_bases")) {
      FlopReport rep{f.at("step").get<std::size_t>(), f.at("cones").get<std::size_t>(), std::nullopt};
      if (f.contains("degree"))
        rep.gorenstein = GorensteinData{Rational::parse(f["degree"].get<std::string>()), f.at("h0").get<Int>(), f.at("gorenstein").get<bool>()};
      r.flop_bases.push_back(rep);
    }
    if (!j.at("inverse_of").is_null()) r.inverse = j["inverse_of"].get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("link record: ") + e.what());
  }
}

WebSummary run_web(const std::vector<WebEntry>& dataset, const WebRunConfig& config, std::ostream& out) {
  const std::size_t begin = std::min(config.offset, dataset.size());
  std::size_t end = dataset.size();
  if (config.limit) end = std::min(end, begin + *config.limit);
  const std::size_t count = end - begin;

  struct Slot {
    bool ready = false;
    std::vector<std::string> lines;
    std::size_t records = 0, complete = 0;
    bool failed = false;
  };
  std::vector<Slot> slots(count);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      const std::size_t idx = begin + k;
      const auto& entry = dataset[idx];
      Slot s;
      try {
        for (const auto& r : enumerate_links(entry.variety, config.link)) {
          s.lines.push_back(record_json(r, idx, entry.id));
          ++s.records;
          if (r.complete()) ++s.complete;
        }
      } catch (const std::exception& e) {
        json d = {{"variety", idx}, {"id", entry.id}, {"error", e.what()}};
        s.lines.assign(1, d.dump());
        s.records = s.complete = 0;
        s.failed = true;
      }
      s.ready = true;
      {
        std::lock_guard lock(mu);
        slots[k] = std::move(s);
      }
      cv.notify_all();
    }
  };

  const unsigned jobs = std::max(1u, config.jobs);
  std::vector<std::jthread> workers;
  for (unsigned i = 0; i < jobs; ++i) workers.emplace_back(work);

  WebSummary summary;
  for (std::size_t k = 0; k < count; ++k) {
    Slot s;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return slots[k].ready; });
      s = std::move(slots[k]);
      slots[k].lines.clear();
    }
    for (const auto& line : s.lines) out << line << '\n';
    if (!out) throw std::runtime_error("write failed");
    ++summary.varieties;
    summary.records += s.records;
    summary.complete += s.complete;
    if (s.failed) ++summary.failures;
  }
  out.flush();
  return summary;
}

}  // namespace toric
