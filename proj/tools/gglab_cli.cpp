#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gglab/errors.hpp"
#include "gglab/io/json_io.hpp"
#include "gglab/io/text_formats.hpp"
#include "gglab/subgroup/cosets.hpp"

using namespace gglab;

namespace {

enum Exit { kOk = 0, kError = 1, kFalse = 2, kTruncated = 3 };

struct Config {
  std::string presentation;
  std::vector<std::string> subgroups;
  int radius = 6;
  int L = 6;
  std::string delta_grid;
  std::string eps = "1/100";
  std::string bound;
  int depth = 4;
  std::uint64_t seed = 1;
  std::size_t sample = 0;
  bool exact = false;
  std::string out = ".";
  bool verbose = false;
  std::string graph;
  std::string mode = "geometric";
  std::string Delta = "10";
  std::string rep;
};

Presentation presentation_of(const Config& c) {
  if (c.presentation.empty()) throw InputError("--presentation is required");
  return load_presentation(c.presentation);
}

std::vector<std::vector<Word>> subgroups_of(const Config& c, const Presentation& p, std::size_t at_least = 1) {
  if (c.subgroups.size() < at_least)
    throw InputError("at least " + std::to_string(at_least) + " --subgroup file(s) required");
  std::vector<std::vector<Word>> out;
  for (const auto& path : c.subgroups) out.push_back(load_subgroup(path, p.alphabet));
  return out;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> grid;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      grid.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError("--delta-grid: '" + item + "' is not an integer");
    }
  }
  return grid;
}

std::string artifact(const Config& c, const std::string& name) { return c.out + "/" + name; }

void emit(const Config& c, const std::string& name, const Json& j) {
  write_text_file(artifact(c, name), dump(j));
  if (c.verbose) std::cout << "wrote " << artifact(c, name) << "\n";
}

void emit_csv(const Config& c, const std::string& name, const std::string& csv) {
  write_text_file(artifact(c, name), csv);
  if (c.verbose) std::cout << "wrote " << artifact(c, name) << "\n";
}

Family pieces_of(const Presentation& p, const CayleyBall& ball, const std::vector<std::vector<Word>>& subs) {
  return subgroup_pieces(p, ball, subs);
}

int cmd_ball(const Config& c) {
  const auto p = presentation_of(c);
  const auto ball = build_ball(p, c.radius);
  emit(c, "ball.json", ball_to_json(ball));
  if (c.verbose) std::cout << ball.size() << " vertices, safe radius " << ball.safe_radius << "\n";
  return kOk;
}

int cmd_delta(const Config& c) {
  DeltaOptions o;
  o.mode = c.exact ? DeltaMode::Exact : (c.sample > 0 ? DeltaMode::Sampled : DeltaMode::Auto);
  if (c.sample > 0) o.sample_vertices = c.sample;
  o.seed = c.seed;
  DeltaReport r;
  if (!c.graph.empty()) {
    const MetricGraph g = graph_from_json(Json::parse(read_text_file(c.graph)));
    r = delta_hyperbolicity(g, o);
  } else {
    const Ambient amb = make_ambient(presentation_of(c), c.radius, {}, o);
    r = amb.delta;
  }
  emit(c, "delta.json", to_json(r));
  if (c.verbose) std::cout << "delta4 = " << r.delta4.to_string() << (r.exact ? " (exact)" : " (lower bound)") << "\n";
  return r.exact ? kOk : kTruncated;
}

int cmd_electrify(const Config& c) {
  const auto p = presentation_of(c);
  const Ambient amb = make_ambient(p, c.radius);
  const ConedSpace cs = electrify(amb.metric, pieces_of(p, *amb.ball, subgroups_of(c, p)));
  EmbeddingOptions eo;
  eo.delta.mode = c.exact ? DeltaMode::Exact : DeltaMode::Auto;
  eo.seed = c.seed;
  eo.max_psi_sources = c.sample;
  const auto rep = coarse_embedding_report(cs, eo);
  emit(c, "electrified.json", coned_to_json(cs));
  emit(c, "embedding.json", to_json(rep));
  emit_csv(c, "psi.csv", psi_csv(rep.psi_table));
  if (c.verbose) std::cout << "delta_el = " << rep.delta_el.delta4.to_string() << ", proper = " << rep.proper << "\n";
  return rep.verdict ? kOk : kFalse;
}

int cmd_horoball(const Config& c) {
  const auto p = presentation_of(c);
  const Ambient amb = make_ambient(p, c.radius);
  const Family family = pieces_of(p, *amb.ball, subgroups_of(c, p));
  emit(c, "horoball.json", horoball_to_json(horoballify(*amb.metric, family, c.depth)));
  DoubleElectrificationOptions o;
  o.depth = c.depth;
  o.seed = c.seed;
  if (c.sample > 0) o.pairs = c.sample;
  const auto rep = double_electrification_check(*amb.metric, family, o);
  emit(c, "double_electrification.json", to_json(rep));
  if (c.verbose) std::cout << "lambda_hat = " << rep.lambda_hat.to_string() << "\n";
  return rep.isometry_ok ? kOk : kFalse;
}

int cmd_height(const Config& c) {
  const auto p = presentation_of(c);
  const auto subs = subgroups_of(c, p);
  if (c.mode == "algebraic") {
    AlgebraicHeightOptions o;
    o.L = c.L;
    const auto rep = algebraic_height(p, subs, o);
    emit(c, "height.json", to_json(rep));
    if (c.verbose) std::cout << "height " << rep.height << (rep.exhaustive ? " (exhaustive)" : "") << "\n";
    return rep.exhaustive ? kOk : kTruncated;
  }
  if (c.mode != "geometric") throw InputError("--mode must be algebraic or geometric");
  const Ambient amb = make_ambient(p, c.radius);
  GeometricOptions o;
  o.delta_grid = c.delta_grid.empty() ? default_delta_grid(amb.ball->safe_radius) : parse_grid(c.delta_grid);
  o.bound = c.bound.empty() ? Dyadic(std::max(1, amb.ball->safe_radius / 5)) : Dyadic::parse(c.bound);
  o.candidate_budget = 20'000'000;
  const auto setting = make_geometric_setting(*amb.ball, *amb.metric, pieces_of(p, *amb.ball, subs), amb.delta.delta4);
  const auto rep = geometric_height(setting, o);
  emit(c, "height.json", to_json(rep, c.radius));
  emit_csv(c, "height.csv", height_levels_csv(rep));
  if (c.verbose) std::cout << "geometric height estimate " << rep.height << "\n";
  return rep.level_cap_hit || rep.budget_hit ? kTruncated : kOk;
}

GradedOptions graded_options(const Config& c) {
  GradedOptions o;
  if (c.mode == "algebraic") o.mode = GradedMode::Algebraic;
  else if (c.mode != "geometric") throw InputError("--mode must be algebraic or geometric");
  o.radius = c.radius;
  o.L = c.L;
  if (!c.bound.empty()) o.bound = Dyadic::parse(c.bound);
  if (!c.delta_grid.empty()) o.delta_grid = parse_grid(c.delta_grid);
  o.seed = c.seed;
  return o;
}

int cmd_graded(const Config& c) {
  const auto p = presentation_of(c);
  const auto v = graded_verdict(p, subgroups_of(c, p), graded_options(c));
  emit(c, "graded.json", to_json(v));
  emit_csv(c, "graded.csv", graded_levels_csv(v));
  if (c.verbose) {
    std::cout << "overall " << (v.overall ? "true" : "false") << ", height " << v.height << "\n";
    for (const auto& t : v.truncated) std::cout << "notice: " << t << "\n";
  }
  return v.overall ? kOk : kFalse;
}

int cmd_meet(const Config& c) {
  const auto p = presentation_of(c);
  const auto subs = subgroups_of(c, p, 2);
  const Ambient amb = make_ambient(p, c.radius);
  const CayleyBall& ball = *amb.ball;
  auto coset = [&](const std::vector<Word>& gens, const Word& rep) {
    const VertexId at = ball.find(ball.word_problem().reduce(rep));
    if (at == kNoVertex) throw InputError("--rep lies outside the ball");
    const auto labels = SubgroupModel::make(p, gens).coset_labels(ball);
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < ball.size(); ++v)
      if (labels[v] == labels[static_cast<std::size_t>(at)]) out.push_back(static_cast<VertexId>(v));
    return out;
  };
  const auto H = coset(subs[0], Word{});
  const auto Y = coset(subs[1], p.alphabet.parse(c.rep));
  MeetingParams mp;
  mp.Delta = Dyadic::parse(c.Delta);
  mp.eps = parse_ratio(c.eps);
  mp.delta = amb.delta.delta4;
  const auto rep = detect_meetings(*amb.metric, H, Y, mp);
  emit(c, "meetings.json", to_json(rep, *amb.metric));
  if (c.verbose) std::cout << rep.pairs.size() << " meeting pairs\n";
  return kOk;
}

int cmd_roundtrip(const Config& c) {
  const auto p = presentation_of(c);
  const auto subs = subgroups_of(c, p);
  if (subs.size() != 1) throw InputError("roundtrip takes exactly one --subgroup");
  RoundtripOptions o;
  o.graded = graded_options(c);
  const auto rec = roundtrip_theorem_check(p, subs[0], o);
  emit(c, "roundtrip.json", to_json(rec));
  if (c.verbose) std::cout << rec.note << "\n";
  return rec.agreement ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gglab: electrification, height and graded relative hyperbolicity on Cayley balls"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* s) {
    s->add_option("--presentation", c.presentation, "presentation file");
    s->add_option("--subgroup", c.subgroups, "subgroup file (repeatable)");
    s->add_option("-R,--radius", c.radius, "ball radius")->capture_default_str();
    s->add_option("--seed", c.seed, "seed for every sampled step")->capture_default_str();
    s->add_option("--out", c.out, "output directory")->capture_default_str();
    s->add_flag("-v", c.verbose, "print a summary");
  };
  std::vector<std::pair<CLI::App*, int (*)(const Config&)>> commands;
  auto add = [&](const char* name, const char* help, int (*fn)(const Config&)) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    commands.emplace_back(s, fn);
    return s;
  };
  add("ball", "build a Cayley ball", cmd_ball);
  auto* delta = add("delta", "four-point hyperbolicity constant", cmd_delta);
  delta->add_option("--graph", c.graph, "graph JSON instead of a presentation");
  delta->add_flag("--exact", c.exact, "exact scan only");
  delta->add_option("--sample", c.sample, "sampled scan over this many vertices");
  auto* el = add("electrify", "cone off subgroup cosets and report the embedding", cmd_electrify);
  el->add_flag("--exact", c.exact, "exact delta only");
  el->add_option("--sample", c.sample, "psi sources per piece (0 = all)");
  auto* horo = add("horoball", "horoballification and the double electrification check", cmd_horoball);
  horo->add_option("--depth", c.depth, "horoball depth K")->capture_default_str();
  horo->add_option("--sample", c.sample, "pairs compared");
  auto* height = add("height", "algebraic or geometric height", cmd_height);
  height->add_option("--mode", c.mode, "algebraic | geometric")->capture_default_str();
  height->add_option("-L,--coset-length", c.L, "coset representative length")->capture_default_str();
  height->add_option("--delta-grid", c.delta_grid, "comma separated Delta values");
  height->add_option("--bound", c.bound, "boundedness threshold B");
  auto* graded = add("graded", "graded relative hyperbolicity verdict", cmd_graded);
  graded->add_option("--mode", c.mode, "algebraic | geometric")->capture_default_str();
  graded->add_option("-L,--coset-length", c.L, "coset representative length")->capture_default_str();
  graded->add_option("--delta-grid", c.delta_grid, "comma separated Delta values");
  graded->add_option("--bound", c.bound, "boundedness threshold B");
  auto* meet = add("meet", "(Delta, eps)-meeting pairs of two cosets", cmd_meet);
  meet->add_option("--eps", c.eps, "eps as a decimal or ratio")->capture_default_str();
  meet->add_option("--Delta", c.Delta, "Delta")->capture_default_str();
  meet->add_option("--rep", c.rep, "representative of the second coset");
  auto* rt = add("roundtrip", "quasiconvexity against the graded verdict", cmd_roundtrip);
  rt->add_option("--mode", c.mode, "algebraic | geometric")->capture_default_str();
  rt->add_option("-L,--coset-length", c.L, "coset representative length")->capture_default_str();
  rt->add_option("--bound", c.bound, "boundedness threshold B");
  rt->add_option("--delta-grid", c.delta_grid, "comma separated Delta values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }
  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(c);
  } catch (const ResourceError& e) {
    std::cerr << "resource error (" << e.budget_name() << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
