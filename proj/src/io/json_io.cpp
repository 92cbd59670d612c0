#include "gglab/io/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gglab/errors.hpp"

namespace gglab {

Json to_json(const Dyadic& x) { return x.to_string(); }

Json ball_to_json(const CayleyBall& ball) {
  Json j;
  j["radius"] = ball.radius;
  j["safe_radius"] = ball.safe_radius;
  j["safe_radius_note"] = ball.safe_radius_note;
  j["strategy"] = to_string(ball.presentation().strategy);
  Json vertices = Json::array();
  for (std::size_t v = 0; v < ball.size(); ++v) vertices.push_back(ball.name(static_cast<VertexId>(v)));
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const BallEdge& e : ball.edges)
    edges.push_back(Json::array({e.from, e.to, std::string(1, ball.alphabet().symbol(e.generator))}));
  j["edges"] = std::move(edges);
  return j;
}

Json graph_to_json(const MetricGraph& g) {
  Json j;
  j["vertices"] = g.names();
  j["point_count"] = g.point_count();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, Dyadic::from_halves(e.length).to_string()}));
  j["edges"] = std::move(edges);
  j["meta"] = g.meta;
  return j;
}

Json coned_to_json(const ConedSpace& cs) {
  Json j = graph_to_json(cs.graph());
  Json cones = Json::array();
  for (std::size_t i = 0; i < cs.piece_count(); ++i)
    cones.push_back({{"piece", cs.family()[i]}, {"vertex", cs.cone(i)}});
  j["cones"] = std::move(cones);
  return j;
}

Json horoball_to_json(const Horoballification& h) {
  Json j = graph_to_json(h.graph);
  j["depth"] = h.depth;
  j["horoballs"] = h.horoballs;
  return j;
}

MetricGraph graph_from_json(const Json& j) {
  try {
    MetricGraph g;
    const Json& vs = j.at("vertices");
    if (vs.is_number_integer()) {
      for (int i = 0; i < vs.get<int>(); ++i) g.add_vertex(std::to_string(i));
    } else {
      for (const auto& name : vs) g.add_vertex(name.get<std::string>());
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2) throw InputError("edge must be [i, j, \"len\"]");
      const auto u = e[0].get<VertexId>(), v = e[1].get<VertexId>();
      HalfUnits len = 2;
      if (e.size() > 2) {
        const Dyadic d = e[2].is_string() ? Dyadic::parse(e[2].get<std::string>()) : Dyadic(e[2].get<std::int64_t>());
        len = d.to_halves();
      }
      g.add_edge(u, v, len);
    }
    if (j.contains("point_count")) g.set_point_count(j["point_count"].get<std::size_t>());
    if (j.contains("meta"))
      for (const auto& [k, v] : j["meta"].items()) g.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    return g;
  } catch (const Json::exception& e) {
    throw InputError(std::string("graph JSON: ") + e.what());
  }
}

Json to_json(const DeltaReport& r) {
  return {{"delta4", to_json(r.delta4)},
          {"exact", r.exact},
          {"sample_vertices", r.sample_vertices},
          {"seed", r.seed},
          {"witness", r.witness},
          {"quadruples_evaluated", r.quadruples_evaluated},
          {"blocks_scanned", r.blocks_scanned},
          {"note", r.note}};
}

Json to_json(const PsiTable& t) {
  Json buckets = Json::array();
  for (const auto& b : t.buckets)
    buckets.push_back({{"r", b.r}, {"raw", to_json(b.raw)}, {"envelope", to_json(b.envelope)}, {"pairs", b.pairs}});
  return {{"buckets", std::move(buckets)},
          {"pieces_scanned", t.pieces_scanned},
          {"sources_scanned", t.sources_scanned},
          {"sampled", t.sampled},
          {"max_piece_diameter", to_json(t.max_piece_diameter)}};
}

Json to_json(const EmbeddingReport& r) {
  Json qc = Json::array();
  for (const auto& c : r.piece_qc) qc.push_back(to_json(c));
  Json records = Json::array();
  for (const auto& p : r.cobounded.records)
    records.push_back({{"onto", p.onto}, {"from", p.from}, {"diameter", to_json(p.diameter)},
                       {"containment", p.containment}, {"violation", p.violation}});
  return {{"delta_el", to_json(r.delta_el)},
          {"psi_table", to_json(r.psi_table)},
          {"proper", r.proper},
          {"proper_note", r.proper_note},
          {"cobounded_max", to_json(r.cobounded_max)},
          {"cobounded",
           {{"pairs", r.cobounded.pairs},
            {"witness", {r.cobounded.witness_onto, r.cobounded.witness_from}},
            {"containment_branch", r.cobounded.containment_branch},
            {"violations", r.cobounded.violations},
            {"records", std::move(records)}}},
          {"piece_qc", std::move(qc)},
          {"piece_qc_max", to_json(r.piece_qc_max)},
          {"scope", r.scope},
          {"verdict", r.verdict}};
}

Json to_json(const DoubleElectrificationReport& r) {
  return {{"lambda_hat", to_json(r.lambda_hat)},
          {"max_additive", to_json(r.max_additive)},
          {"pairs_checked", r.pairs_checked},
          {"isometry_pairs_checked", r.isometry_pairs_checked},
          {"isometry_ok", r.isometry_ok},
          {"witness", {r.witness.first, r.witness.second}},
          {"degenerate_depth", r.degenerate_depth}};
}

Json to_json(const MeetingReport& r, const MetricGraph& g) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({g.name(a), g.name(b)});
  Json meta = r.meta;
  meta["Delta"] = r.params.Delta.to_string();
  meta["rho"] = r.rho.to_string();
  meta["slack"] = r.slack.to_string();
  meta["raw_pairs"] = std::to_string(r.raw_pairs);
  meta["candidates"] = std::to_string(r.candidates);
  std::ostringstream eps;
  eps << r.params.eps;
  return {{"delta", to_json(r.params.delta)}, {"eps", eps.str()}, {"pairs", std::move(pairs)}, {"meta", meta}};
}

Json to_json(const AlgebraicHeightReport& r) {
  Json witnesses = Json::array();
  for (std::size_t level = 0; level < r.witnesses.size(); ++level)
    for (const auto& w : r.witnesses[level]) {
      Json cosets = Json::array();
      for (const auto& c : w.cosets) {
        const Alphabet& A = r.subgroups.at(c.subgroup).alphabet();
        cosets.push_back({{"subgroup", c.subgroup}, {"rep", element_name(A, c.rep)}});
      }
      witnesses.push_back({{"level", level + 1},
                           {"cosets", std::move(cosets)},
                           {"rank", w.rank},
                           {"element", element_name(w.intersection.alphabet(), w.element)}});
    }
  Json subgroups = Json::array();
  for (const auto& s : r.subgroups) subgroups.push_back(s.signature());
  return {{"mode", "algebraic"},
          {"height", r.height},
          {"at_bound", r.at_bound},
          {"exhaustive", r.exhaustive},
          {"L", r.L},
          {"subgroups", std::move(subgroups)},
          {"cosets_enumerated", r.cosets_enumerated},
          {"pullbacks", r.pullbacks},
          {"note", r.note},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const GeometricHeightReport& r, int radius) {
  Json witnesses = Json::array();
  for (const auto& level : r.levels)
    for (const auto& gi : level) {
      Json w{{"level", gi.level},
             {"tuple", gi.tuple},
             {"Delta", gi.Delta},
             {"size", gi.J.size()},
             {"diameter", to_json(gi.diameter)},
             {"diameter_exact", gi.diameter_exact}};
      if (gi.J.size() <= 64) w["J"] = gi.J;
      witnesses.push_back(std::move(w));
    }
  return {{"mode", "geometric"},
          {"height", r.height},
          {"exhaustive", !r.level_cap_hit && !r.budget_hit},
          {"R", radius},
          {"B", to_json(r.bound)},
          {"effective_B", to_json(r.effective_bound)},
          {"delta_grid", r.delta_grid},
          {"unbounded_pieces", r.unbounded_pieces},
          {"truncated", true},
          {"note", r.note},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const GradedVerdict& v) {
  Json levels = Json::array();
  for (const auto& l : v.levels)
    levels.push_back({{"level", l.level},
                      {"pieces", l.pieces},
                      {"representatives", l.representatives},
                      {"embedding", to_json(l.embedding)},
                      {"embedded_pieces", l.embedded_pieces},
                      {"path_connected", to_json(l.path_connected)},
                      {"connectivity_examined", l.connectivity_examined},
                      {"max_shortening", to_json(l.max_shortening)},
                      {"verdict", l.verdict}});
  Json j{{"mode", to_string(v.mode)},
         {"R", v.radius},
         {"safe_radius", v.safe_radius},
         {"height", v.height},
         {"B", to_json(v.bound)},
         {"finite_height", v.finite_height},
         {"levels", std::move(levels)},
         {"overall", v.overall},
         {"truncated", v.truncated}};
  j["height_previous"] = v.height_previous ? Json(*v.height_previous) : Json(nullptr);
  if (v.geometric) j["height_report"] = to_json(*v.geometric, v.radius);
  if (v.algebraic) j["height_report"] = to_json(*v.algebraic);
  return j;
}

Json to_json(const RoundtripRecord& r) {
  Json table = Json::array();
  for (const auto& row : r.properness) table.push_back({{"D0", row.D0}, {"max_orbit_points", row.max_orbit_points}});
  return {{"qc_constant", to_json(r.qc_constant)},
          {"qc_threshold", to_json(r.qc_threshold)},
          {"quasiconvex", r.quasiconvex},
          {"graded", to_json(r.graded)},
          {"properness", std::move(table)},
          {"agreement", r.agreement},
          {"note", r.note}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

std::string psi_csv(const PsiTable& t) {
  std::ostringstream s;
  s << "# r: base distance bucket [r, r+1) (edge units)\n"
    << "# raw: least angular distance in the bucket (edge units)\n"
    << "# envelope: min of raw over buckets >= r (edge units)\n"
    << "# pairs: point pairs in the bucket (count)\n"
    << "r,raw,envelope,pairs\n";
  for (const auto& b : t.buckets) s << b.r << ',' << b.raw.to_string() << ',' << b.envelope.to_string() << ',' << b.pairs << '\n';
  return s.str();
}

std::string height_levels_csv(const GeometricHeightReport& r) {
  std::ostringstream s;
  s << "# level: intersection level i (count of cosets)\n"
    << "# accepted: accepted geometric i-fold intersections (count)\n"
    << "# max_diameter: largest diameter among them (edge units)\n"
    << "level,accepted,max_diameter\n";
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    Dyadic best;
    for (const auto& gi : r.levels[i]) best = max(best, gi.diameter);
    s << i + 2 << ',' << r.levels[i].size() << ',' << best.to_string() << '\n';
  }
  return s.str();
}

std::string graded_levels_csv(const GradedVerdict& v) {
  std::ostringstream s;
  s << "# level: graded level i (index)\n"
    << "# pieces: sets coned off in d_i (count)\n"
    << "# delta_el: four-point constant of d_i coned over the level i-1 family (edge units)\n"
    << "# path_connected: coarse path connectivity D_i (edge units)\n"
    << "# max_shortening: largest d - d_i on sampled pairs (edge units)\n"
    << "# verdict: level verdict (0 or 1)\n"
    << "level,pieces,delta_el,path_connected,max_shortening,verdict\n";
  for (const auto& l : v.levels)
    s << l.level << ',' << l.pieces << ',' << l.embedding.delta_el.delta4.to_string() << ','
      << l.path_connected.to_string() << ',' << l.max_shortening.to_string() << ',' << (l.verdict ? 1 : 0) << '\n';
  return s.str();
}

}  // namespace gglab
