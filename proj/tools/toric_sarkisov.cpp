// Command-line front end for the toric Sarkisov link engine.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "toric/classification.hpp"
#include "toric/shed.hpp"

using namespace toric;
using json = nlohmann::ordered_json;

namespace {

/// Bad command-line values; reported like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Standard output, or a file that only appears once commit() succeeds.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path_.empty()) return;
    tmp_ = path_ + ".partial";
    file_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot write " + tmp_);
  }
  ~Output() {
    if (!tmp_.empty() && !done_) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void commit() {
    if (path_.empty()) {
      std::cout.flush();
      return;
    }
    file_.close();
    if (!file_) throw std::runtime_error("write failed: " + tmp_);
    std::filesystem::rename(tmp_, path_);
    done_ = true;
  }

 private:
  std::string path_, tmp_;
  std::ofstream file_;
  bool done_ = false;
};

void write_file(const std::string& path, const std::string& text) {
  Output out(path);
  out.stream() << text;
  out.commit();
}

struct Common {
  std::string dmax = "5";
  std::string dedup = "on";
  std::string bound = "discrepancy";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  std::string format = "jsonl";
};

LinkConfig link_config(const Common& c) {
  LinkConfig cfg;
  try {
    cfg.dmax = Rational::parse(c.dmax);
  } catch (const std::exception& e) {
    throw UsageError("--dmax: " + std::string(e.what()));
  }
  if (cfg.dmax <= Rational(0)) throw UsageError("--dmax must be positive");
  cfg.dedup_symmetry = c.dedup == "on";
  try {
    cfg.bound = parse_bound_mode(c.bound);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

IntVector parse_point(const std::string& s) {
  std::vector<Int> v;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    try {
      v.push_back(std::stoll(tok, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("--point: expected comma-separated integers, got '" + s + "'");
  }
  if (v.empty()) throw UsageError("--point is empty");
  return IntVector(v);
}

std::string discriminant_text(const std::vector<Int>& d) {
  if (d.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(d[i]);
  return s;
}

SimplexVariety single_variety(const std::string& path) {
  auto entries = load_dataset(path);
  if (entries.size() != 1) throw ParseError(path, 1, "expected exactly one fan, found " + std::to_string(entries.size()));
  return entries[0].variety;
}

int cmd_check(const std::string& path, const Common& c) {
  auto fans = read_fan_file(path);
  Output out(c.out);
  for (const auto& f : fans) {
    Fan fan = f.fan();
    const bool terminal = is_terminal(fan), canonical = is_canonical(fan), fano = is_fano(fan), simplex = f.is_simplex();
    std::string sing = terminal ? "terminal" : canonical ? "canonical, not terminal;" : "not canonical;";
    std::string shape = std::string(fano ? "Fano" : "not Fano") + (simplex ? " simplex" : ", not a simplex");
    std::vector<Int> weights, disc;
    if (simplex) {
      SimplexVariety x(f.rays);
      weights = x.sorted_weights();
      disc = x.discriminant();
    }
    if (c.format == "jsonl") {
      json j = {{"id", f.id}, {"line", f.line}, {"terminal", terminal}, {"canonical", canonical}, {"fano", fano}, {"simplex", simplex},
                {"normal_form", normal_form(fan.rays()).bytes}};
      if (simplex) j["weights"] = weights, j["discriminant"] = disc;
      out.stream() << j.dump() << '\n';
      continue;
    }
    if (fans.size() > 1) out.stream() << (f.id.empty() ? "line " + std::to_string(f.line) : f.id) << ": ";
    out.stream() << sing << ' ' << shape;
    if (simplex) out.stream() << ", weights " << tuple_string(weights) << ", discriminant " << discriminant_text(disc);
    out.stream() << '\n';
  }
  out.commit();
  return 0;
}

int cmd_info(const std::string& path, const Common& c) {
  auto x = single_variety(path);
  json j = {{"name", x.name()}, {"dimension", x.dim()}, {"weights", x.weights()}, {"discriminant", x.discriminant()},
            {"normal_form", x.key().bytes}, {"terminal", is_terminal(x.fan())}, {"fano", is_fano(x.fan())}};
  if (is_fano(x.fan())) {
    auto g = gorenstein_data(x.fan());
    j["degree"] = g.degree.str();
    j["h0"] = g.h0;
    j["gorenstein"] = g.gorenstein;
  }
  Output out(c.out);
  out.stream() << (c.format == "jsonl" ? j.dump() : j.dump(2)) << '\n';
  out.commit();
  return 0;
}

int cmd_extract(const std::string& path, const Common& c) {
  auto x = single_variety(path);
  auto cfg = link_config(c);
  Output out(c.out);
  for (const auto& cand : candidate_points(x, cfg.dmax, cfg.dedup_symmetry, cfg.bound)) {
    auto n = notation(cand);
    if (c.format == "jsonl") {
      json j = {{"point", cand.point.coords()}, {"notation", n.display}, {"table", n.table}, {"discrepancy", cand.discrepancy.str()},
                {"cone", cand.tau}};
      out.stream() << j.dump() << '\n';
    } else {
      out.stream() << to_string(cand.point) << "  " << n.display << "  discrepancy " << cand.discrepancy.str() << '\n';
    }
  }
  out.commit();
  return 0;
}

int cmd_link(const std::string& path, const std::string& point, bool all, const Common& c) {
  if (point.empty() == !all) throw UsageError("give exactly one of --point and --all");
  auto x = single_variety(path);
  std::vector<LinkRecord> records;
  if (all) {
    records = enumerate_links(x, link_config(c));
    pair_inverses(records);
  } else {
    IntVector v = parse_point(point);
    if (v.size() != x.dim()) throw UsageError("--point has " + std::to_string(v.size()) + " entries, expected " + std::to_string(x.dim()));
    records.push_back(run_link(x, v));
  }
  Output out(c.out);
  std::size_t complete = 0;
  for (const auto& r : records) {
    complete += r.complete();
    if (c.format == "jsonl") out.stream() << record_json(r) << '\n';
    else out.stream() << link_display(r) << '\n';
  }
  out.commit();
  std::cerr << records.size() << " records, " << complete << " complete\n";
  return 0;
}

int cmd_web(const std::string& path, std::size_t offset, std::optional<std::size_t> limit, const Common& c) {
  auto data = load_dataset(path);
  WebRunConfig cfg{link_config(c), c.jobs, offset, limit};
  Output out(c.out);
  WebSummary s;
  if (c.format == "jsonl") {
    s = run_web(data, cfg, out.stream());
  } else {
    std::stringstream lines;
    s = run_web(data, cfg, lines);
    std::string line;
    while (std::getline(lines, line)) {
      auto j = json::parse(line);
      if (j.contains("error")) out.stream() << j["id"].get<std::string>() << ": error: " << j["error"].get<std::string>() << '\n';
      else out.stream() << j["id"].get<std::string>() << ": " << link_display(parse_record(line)) << '\n';
    }
  }
  out.commit();
  std::cerr << s.varieties << " varieties, " << s.records << " records, " << s.complete << " complete, " << s.failures << " failures\n";
  return s.failures ? 1 : 0;
}

int cmd_classify3(Int bound, const Common& c) {
  Output out(c.out);
  for (const auto& e : classify_dim3(bound)) {
    if (c.format == "jsonl") {
      json j = {{"name", e.variety.name()}, {"weights", e.variety.sorted_weights()}, {"discriminant", e.variety.discriminant()}};
      json rays = json::array();
      for (const auto& r : e.variety.rays()) rays.push_back(r.coords());
      j["rays"] = rays;
      out.stream() << j.dump() << '\n';
    } else {
      out.stream() << write_fan_text(e.variety.rays(), {}, e.id);
    }
  }
  out.commit();
  return 0;
}

int cmd_verify(const std::string& path, bool vertex_lists, const Common& c) {
  std::vector<FanText> entries;
  if (vertex_lists) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    entries = parse_vertex_lists(in, path);
  } else {
    entries = read_fan_file(path);
  }
  auto report = verify_dataset(entries);
  Output out(c.out);
  out.stream() << report_json(report) << '\n';
  out.commit();
  return report.rejected.empty() ? 0 : 1;
}

int cmd_p4_search(Int bound_abc, Int bound_d, const Common& c) {
  auto s = p4_weight_search(bound_abc, bound_d);
  auto p4 = weighted_projective_space({1, 1, 1, 1, 1});
  json j;
  for (const auto& [name, list, literal] : {std::tuple{"flop", &s.flop, s.flop_literal}, std::tuple{"flip", &s.flip, s.flip_literal}}) {
    json a = json::array();
    for (const auto& t : *list) {
      auto r = run_link(p4, p4_blowup_point(t));
      a.push_back({{"tuple", {t.d, t.a, t.b, t.c}}, {"discrepancy", r.discrepancy.str()}, {"end", r.end_display()}, {"link", link_display(r)}});
    }
    j[name] = {{"candidates", literal}, {"tuples", a}};
  }
  Output out(c.out);
  out.stream() << (c.format == "jsonl" ? j.dump() : j.dump(2)) << '\n';
  out.commit();
  return 0;
}

int cmd_shed(const std::string& path, const std::string& point, const std::string& kind, const Common& c) {
  if (kind != "svg" && kind != "off") throw UsageError("--kind must be svg or off");
  auto x = single_variety(path);
  auto render = [&](const Fan& f, const std::string& title, std::optional<std::size_t> exceptional = std::nullopt) {
    return kind == "svg" ? shed_svg(f, title, exceptional) : shed_off(f);
  };
  if (point.empty()) {
    auto text = render(x.fan(), x.name());
    write_file(c.out, text);
    return 0;
  }
  if (c.out.empty()) throw UsageError("--point writes one file per model and needs --out PREFIX");
  auto r = run_link(x, parse_point(point));
  // render everything first so that a failure leaves no files behind
  std::vector<std::string> texts{render(x.fan(), "X = " + x.name())};
  for (const auto& step : r.steps)
    if (!step.model.empty())
      texts.push_back(render(Fan(r.model_rays, step.model), "Y" + std::to_string(texts.size()), r.model_rays.size() - 1));
  if (r.target) {
    SimplexVariety t(r.target->rays);
    texts.push_back(render(t.fan(), "X' = " + t.name()));
  }
  for (std::size_t i = 0; i < texts.size(); ++i) write_file(c.out + "-" + std::to_string(i) + "." + kind, texts[i]);
  std::cerr << link_display(r) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric Sarkisov links between terminal fake weighted projective spaces"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool links) {
    s->add_option("--out", c.out, "write here instead of standard output (atomically)");
    s->add_option("--format", c.format, "jsonl or pretty")->check(CLI::IsMember({"jsonl", "pretty"}));
    if (!links) return;
    s->add_option("--dmax", c.dmax, "discrepancy bound, rational")->capture_default_str();
    s->add_option("--dedup-symmetry", c.dedup, "one extraction per automorphism orbit")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
    s->add_option("--bound", c.bound, "discrepancy (psi - 1 <= dmax) or weight (relation entries <= dmax)")
        ->check(CLI::IsMember({"discrepancy", "weight"}))
        ->capture_default_str();
  };

  std::string file, point, kind = "svg";
  bool all = false, vertex_lists = false;
  std::size_t offset = 0, limit = 0;
  Int bound3 = 25, bound_abc = 100, bound_d = 50;

  auto* check = app.add_subcommand("check", "singularity, Fano and simplex report for each fan in a file");
  check->add_option("file", file)->required();
  check->add_option("--out", c.out);
  check->add_option("--format", c.format)->check(CLI::IsMember({"jsonl", "pretty"}));

  auto* info = app.add_subcommand("info", "weights, discriminant, normal form and anticanonical data");
  info->add_option("file", file)->required();
  common(info, false);

  auto* extract = app.add_subcommand("extract", "terminal extremal extractions up to the bound");
  extract->add_option("file", file)->required();
  common(extract, true);

  auto* link = app.add_subcommand("link", "run the two-ray game");
  link->add_option("file", file)->required();
  link->add_option("--point", point, "extraction point x,y,z[,w]");
  link->add_flag("--all", all, "every extraction up to --dmax");
  common(link, true);

  auto* web = app.add_subcommand("web", "all links from every variety of a dataset");
  web->add_option("file", file)->required();
  web->add_option("--jobs", c.jobs)->check(CLI::PositiveNumber);
  web->add_option("--offset", offset);
  web->add_option("--limit", limit, "0 for no limit");
  common(web, true);

  auto* classify3 = app.add_subcommand("classify3", "the terminal Fano simplices of dimension 3");
  classify3->add_option("--bound", bound3, "weight sum bound")->capture_default_str();
  classify3->add_option("--out", c.out);
  classify3->add_option("--format", c.format, "jsonl or fan text")->check(CLI::IsMember({"jsonl", "text"}));

  auto* verify4 = app.add_subcommand("verify4", "verify an ingested dataset");
  verify4->add_option("file", file)->required();
  verify4->add_flag("--vertex-lists", vertex_lists, "one bracketed vertex list per line");
  verify4->add_option("--out", c.out);

  auto* p4s = app.add_subcommand("p4-search", "weighted point blowups of P^4 followed by a flop or a flip");
  p4s->add_option("--bound-abc", bound_abc)->capture_default_str();
  p4s->add_option("--bound-d", bound_d)->capture_default_str();
  common(p4s, false);

  auto* shed = app.add_subcommand("shed-svg", "render the shed of a fan, or of every model of a link");
  shed->add_option("file", file)->required();
  shed->add_option("--point", point, "render X, Y1, ..., X' of the link from this extraction");
  shed->add_option("--kind", kind, "svg or off")->capture_default_str();
  shed->add_option("--out", c.out, "output path, or prefix with --point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  if (classify3->parsed() && c.format == "jsonl" && classify3->count("--format") == 0) c.format = "text";
  if (check->parsed() && check->count("--format") == 0) c.format = "pretty";

  try {
    if (check->parsed()) return cmd_check(file, c);
    if (info->parsed()) return cmd_info(file, c);
    if (extract->parsed()) return cmd_extract(file, c);
    if (link->parsed()) return cmd_link(file, point, all, c);
    if (web->parsed()) return cmd_web(file, offset, limit ? std::optional<std::size_t>(limit) : std::nullopt, c);
    if (classify3->parsed()) return cmd_classify3(bound3, c);
    if (verify4->parsed()) return cmd_verify(file, vertex_lists, c);
    if (p4s->parsed()) return cmd_p4_search(bound_abc, bound_d, c);
    if (shed->parsed()) return cmd_shed(file, point, kind, c);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
