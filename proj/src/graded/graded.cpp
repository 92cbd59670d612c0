#include "gglab/graded/graded.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gglab/errors.hpp"
#include "gglab/metric/geodesics.hpp"
#include "gglab/metric/local_search.hpp"
#include "gglab/subgroup/cosets.hpp"

namespace gglab {

namespace {

bool shortlex_string_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

void append_unique(Family& out, std::set<Piece>& seen, Family more) {
  for (Piece& p : more)
    if (seen.insert(p).second) out.push_back(std::move(p));
}

/// Pieces meeting the radius-1 ball around the identity, or the first pieces if none do.
std::vector<std::size_t> identity_scope(const CayleyBall& ball, const Family& family, std::size_t limit) {
  std::vector<std::size_t> scope;
  for (std::size_t i = 0; i < family.size() && scope.size() < limit; ++i)
    if (std::any_of(family[i].begin(), family[i].end(),
                    [&](VertexId v) { return ball.level[static_cast<std::size_t>(v)] <= 1; }))
      scope.push_back(i);
  for (std::size_t i = 0; i < family.size() && scope.empty(); ++i) {
    scope.push_back(i);
    if (i + 1 >= limit) break;
  }
  return scope;
}

std::vector<VertexId> sample_safe(const CayleyBall& ball, std::size_t count, std::uint64_t seed) {
  std::vector<VertexId> safe;
  for (std::size_t v = 0; v < ball.size(); ++v)
    if (ball.in_safe_ball(static_cast<VertexId>(v))) safe.push_back(static_cast<VertexId>(v));
  if (safe.size() <= count) return safe;
  std::vector<VertexId> pick;
  std::mt19937_64 rng(seed);
  std::sample(safe.begin(), safe.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(count), rng);
  return pick;
}

std::string basis_name(const CoreGraph& core) {
  std::string s = "<";
  const auto basis = core.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) s += ", ";
    s += element_name(core.alphabet(), basis[i]);
  }
  return s + ">";
}

Dyadic default_bound(int safe_radius) { return Dyadic(std::max(1, safe_radius / 5)); }

GeometricOptions geometric_options(const GradedOptions& o, int safe_radius) {
  GeometricOptions g;
  g.bound = o.bound.value_or(default_bound(safe_radius));
  g.delta_grid = o.delta_grid.empty() ? default_delta_grid(safe_radius) : o.delta_grid;
  g.candidate_budget = 20'000'000;
  return g;
}

GeometricHeightReport geometric_height_of(const Ambient& amb, const Presentation& p,
                                          const std::vector<std::vector<Word>>& subgroups,
                                          const GeometricOptions& g) {
  const auto setting = make_geometric_setting(*amb.ball, *amb.metric, subgroup_pieces(p, *amb.ball, subgroups),
                                              amb.delta.delta4);
  return geometric_height(setting, g);
}

void run_levels(const Ambient& amb, const std::vector<Family>& families,
                const std::vector<std::vector<std::string>>& names, const GradedOptions& o, GradedVerdict& v) {
  const CayleyBall& ball = *amb.ball;
  const auto sources = sample_safe(ball, o.distortion_sources, o.seed);
  for (int i = 1; i <= v.height + 1; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    GradedLevelReport lr;
    lr.level = i;
    const Family current = idx < families.size() ? families[idx] : Family{};
    const Family& previous = families.at(idx - 1);
    lr.pieces = current.size();
    if (idx < names.size()) lr.representatives = names[idx];

    auto level = std::make_shared<ConedSpace>(build_level_metric(amb, current));
    std::shared_ptr<const MetricGraph> di(level, &level->graph());
    EmbeddingOptions eo;
    eo.delta = o.level_delta;
    eo.delta.seed = o.seed;
    eo.scope = identity_scope(ball, previous, o.scope_pieces);
    eo.scope_note = previous.empty() ? "empty family" : "pieces meeting the unit ball at the identity";
    eo.proper_threshold = o.proper_threshold;
    eo.max_psi_sources = o.psi_sources;
    eo.seed = o.seed;
    lr.embedded_pieces = previous.size();
    lr.embedding = coarse_embedding_report(electrify(di, previous), eo);

    lr.connectivity_examined = std::min(current.size(), o.connectivity_pieces);
    for (std::size_t k = 0; k < lr.connectivity_examined; ++k)
      lr.path_connected = max(lr.path_connected, coarse_connectivity(*amb.metric, current[k], 64));

    HalfUnits shortening = 0;
    for (VertexId s : sources) {
      const auto d = amb.metric->distances_from(s);
      const auto e = di->distances_from(s);
      for (std::size_t x = 0; x < ball.size(); ++x)
        if (ball.in_safe_ball(static_cast<VertexId>(x)) && is_finite(d[x]) && is_finite(e[x]))
          shortening = std::max(shortening, d[x] - e[x]);
    }
    lr.max_shortening = Dyadic::from_halves(shortening);

    lr.verdict = lr.embedding.proper && !lr.embedding.delta_el.delta4.is_infinite() && lr.path_connected <= o.path_cap;
    const std::string tag = "level " + std::to_string(i) + ": ";
    if (!lr.embedding.delta_el.exact) v.truncated.push_back(tag + "delta_el sampled (lower bound)");
    if (lr.embedding.psi_table.sampled) v.truncated.push_back(tag + "psi sources sampled");
    if (lr.connectivity_examined < current.size())
      v.truncated.push_back(tag + "path connectivity checked on " + std::to_string(lr.connectivity_examined) +
                            " of " + std::to_string(current.size()) + " pieces");
    v.levels.push_back(std::move(lr));
  }
}

GradedVerdict graded_on(const Ambient& amb, const Presentation& p, const std::vector<std::vector<Word>>& subgroups,
                        const GradedOptions& o) {
  GradedVerdict v;
  v.mode = o.mode;
  v.radius = amb.ball->radius;
  v.safe_radius = amb.ball->safe_radius;
  if (!amb.delta.exact) v.truncated.push_back("ambient delta sampled (lower bound)");
  std::vector<Family> families(2);
  std::vector<std::vector<std::string>> names(2);
  families[1] = subgroup_pieces(p, *amb.ball, subgroups);

  if (o.mode == GradedMode::Algebraic) {
    AlgebraicHeightOptions ao;
    ao.L = o.L;
    v.algebraic = algebraic_height(p, subgroups, ao);
    const auto& ah = *v.algebraic;
    v.height = ah.height;
    v.bound = o.bound.value_or(default_bound(v.safe_radius));
    v.finite_height = ah.exhaustive && !ah.at_bound;
    if (!v.finite_height) v.truncated.push_back("algebraic height not certified up to L = " + std::to_string(o.L));
    for (const auto& gens : subgroups) names[1].push_back(basis_name(CoreGraph::fold(p.alphabet, gens)));
    for (std::size_t lvl = 2; lvl <= ah.witnesses.size(); ++lvl) {
      Family fam;
      std::set<Piece> seen;
      std::vector<std::string> level_names;
      for (const CoreGraph& rep : conjugacy_representatives(ah.witnesses[lvl - 1])) {
        level_names.push_back(basis_name(rep));
        append_unique(fam, seen, coset_pieces_auto(SubgroupModel::from_core(p, rep), *amb.ball, 2).pieces);
      }
      families.push_back(std::move(fam));
      names.push_back(std::move(level_names));
    }
  } else {
    const GeometricOptions g = geometric_options(o, v.safe_radius);
    v.bound = g.bound;
    v.geometric = geometric_height_of(amb, p, subgroups, g);
    const auto& gh = *v.geometric;
    v.height = gh.height;
    v.finite_height = !gh.level_cap_hit && !gh.budget_hit;
    if (gh.level_cap_hit) v.truncated.push_back("geometric height scan reached the level cap");
    if (gh.budget_hit) v.truncated.push_back("geometric height scan exhausted its candidate budget");
    if (o.check_stabilization && v.radius >= 3) {
      const Ambient prev = make_ambient(p, v.radius - 2, o.ball, {DeltaMode::Auto});
      v.height_previous = geometric_height_of(prev, p, subgroups, g).height;
      if (*v.height_previous != v.height) {
        v.finite_height = false;
        v.truncated.push_back("geometric height not stabilizing: " + std::to_string(*v.height_previous) +
                              " at R = " + std::to_string(v.radius - 2) + ", " + std::to_string(v.height) +
                              " at R = " + std::to_string(v.radius) + "; levels skipped");
      }
    }
    for (const auto& gens : subgroups) {
      std::string s = "<";
      for (std::size_t k = 0; k < gens.size(); ++k) s += (k ? ", " : "") + element_name(p.alphabet, gens[k]);
      names[1].push_back(s + ">");
    }
    for (const auto& level : gh.levels) {
      Family fam;
      std::set<Piece> seen;
      for (const auto& gi : level)
        if (seen.insert(gi.J).second) fam.push_back(gi.J);
      std::vector<std::string> level_names;
      for (std::size_t r : translation_representatives(*amb.ball, fam))
        level_names.push_back("J" + std::to_string(r) + " (" + std::to_string(fam[r].size()) + " points)");
      families.push_back(std::move(fam));
      names.push_back(std::move(level_names));
    }
  }

  if (v.finite_height) run_levels(amb, families, names, o, v);
  v.overall = v.finite_height && !v.levels.empty() &&
              std::all_of(v.levels.begin(), v.levels.end(), [](const GradedLevelReport& l) { return l.verdict; });
  return v;
}

}  // namespace

Ambient make_ambient(const Presentation& p, int radius, const BallOptions& ball_options,
                     const DeltaOptions& delta_options) {
  Ambient a;
  auto ball = std::make_shared<const CayleyBall>(build_ball(p, radius, ball_options));
  a.ball = ball;
  std::shared_ptr<const MetricGraph> base(ball, &ball->graph);
  if (p.electrify.empty()) {
    a.metric = base;
  } else {
    auto family = coset_pieces_auto(SubgroupModel::make(p, p.electrify), *ball, 2);
    a.electrified_cosets = family.pieces.size();
    auto coned = std::make_shared<const ConedSpace>(electrify(base, std::move(family.pieces)));
    a.metric = std::shared_ptr<const MetricGraph>(coned, &coned->graph());
  }
  a.delta = delta_hyperbolicity(*a.metric, delta_options);
  return a;
}

Family subgroup_pieces(const Presentation& p, const CayleyBall& ball, const std::vector<std::vector<Word>>& subgroups) {
  Family out;
  std::set<Piece> seen;
  for (const auto& gens : subgroups)
    append_unique(out, seen, coset_pieces_auto(SubgroupModel::make(p, gens), ball, 2).pieces);
  return out;
}

std::vector<CoreGraph> conjugacy_representatives(const std::vector<AlgebraicWitness>& witnesses) {
  std::map<std::string, std::pair<std::string, const CoreGraph*>> best;
  for (const auto& w : witnesses) {
    const std::string cls = w.intersection.conjugacy_signature();
    const std::string sig = w.intersection.signature();
    auto it = best.find(cls);
    if (it == best.end())
      best.emplace(cls, std::make_pair(sig, &w.intersection));
    else if (shortlex_string_less(sig, it->second.first))
      it->second = {sig, &w.intersection};
  }
  std::vector<std::pair<std::string, const CoreGraph*>> chosen;
  for (auto& [cls, entry] : best) chosen.push_back(entry);
  std::sort(chosen.begin(), chosen.end(),
            [](const auto& a, const auto& b) { return shortlex_string_less(a.first, b.first); });
  std::vector<CoreGraph> out;
  for (auto& [sig, core] : chosen) out.push_back(*core);
  return out;
}

std::vector<std::size_t> translation_representatives(const CayleyBall& ball, const std::vector<Piece>& sets,
                                                     std::size_t anchor_limit) {
  const Alphabet& A = ball.alphabet();
  const WordProblem& wp = ball.word_problem();
  std::set<std::string> classes;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Piece& J = sets[i];
    // Anchors: points of least degree in the induced subgraph, a translation invariant choice.
    std::vector<std::size_t> degree(J.size(), 0);
    for (std::size_t k = 0; k < J.size(); ++k)
      for (Letter l = 0; l < A.size(); ++l) {
        const VertexId t = ball.neighbor(J[k], l);
        if (t != kNoVertex && std::binary_search(J.begin(), J.end(), t)) ++degree[k];
      }
    const std::size_t least = J.empty() ? 0 : *std::min_element(degree.begin(), degree.end());
    std::string key;
    std::size_t anchors = 0;
    for (std::size_t k = 0; k < J.size() && anchors < anchor_limit; ++k) {
      if (degree[k] != least) continue;
      ++anchors;
      const Word inv = inverse(ball.vertices[static_cast<std::size_t>(J[k])], A);
      std::vector<std::string> translate;
      for (VertexId y : J)
        translate.push_back(element_name(A, wp.reduce(multiply(inv, ball.vertices[static_cast<std::size_t>(y)], A))));
      std::sort(translate.begin(), translate.end(), shortlex_string_less);
      std::string candidate;
      for (const auto& t : translate) candidate += t + ",";
      if (key.empty() || shortlex_string_less(candidate, key)) key = std::move(candidate);
    }
    if (classes.insert(key).second) reps.push_back(i);
  }
  return reps;
}

ConedSpace build_level_metric(const Ambient& ambient, Family family) { return electrify(ambient.metric, std::move(family)); }

std::string to_string(GradedMode m) { return m == GradedMode::Algebraic ? "algebraic" : "geometric"; }

GradedVerdict graded_verdict(const Presentation& p, const std::vector<std::vector<Word>>& subgroups,
                             const GradedOptions& options) {
  const Ambient amb = make_ambient(p, options.radius, options.ball, {DeltaMode::Auto});
  return graded_on(amb, p, subgroups, options);
}

RoundtripRecord roundtrip_theorem_check(const Presentation& p, const std::vector<Word>& subgroup,
                                        const RoundtripOptions& options) {
  RoundtripRecord rec;
  const Ambient amb = make_ambient(p, options.graded.radius, options.graded.ball, {DeltaMode::Auto});
  const CayleyBall& ball = *amb.ball;
  rec.graded = graded_on(amb, p, {subgroup}, options.graded);

  const auto labels = SubgroupModel::make(p, subgroup).coset_labels(ball);
  std::vector<VertexId> orbit;
  for (std::size_t v = 0; v < ball.size(); ++v)
    if (labels[v] == labels[0] && ball.in_safe_ball(static_cast<VertexId>(v))) orbit.push_back(static_cast<VertexId>(v));
  std::vector<VertexId> domain = orbit;
  if (domain.size() > options.qc_points) {
    std::vector<VertexId> pick;
    std::mt19937_64 rng(options.graded.seed);
    std::sample(orbit.begin(), orbit.end(), std::back_inserter(pick),
                static_cast<std::ptrdiff_t>(options.qc_points), rng);
    domain = std::move(pick);
  }
  rec.qc_threshold = options.qc_threshold;
  rec.qc_constant = quasiconvexity_constant(*amb.metric, orbit, all_pairs(domain)).constant;
  rec.quasiconvex = rec.qc_constant <= options.qc_threshold;

  std::vector<char> in_orbit(amb.metric->size(), 0);
  for (VertexId v : orbit) in_orbit[static_cast<std::size_t>(v)] = 1;
  LocalSearch search(*amb.metric);
  const auto centers = sample_safe(ball, options.properness_centers, options.graded.seed);
  for (int D0 : options.properness_radii) {
    ProperRow row{D0, 0};
    for (VertexId c : centers) {
      std::size_t count = 0;
      for (const auto& [x, d] : search.run(std::span(&c, 1), 2 * D0))
        if (in_orbit[static_cast<std::size_t>(x)]) ++count;
      row.max_orbit_points = std::max(row.max_orbit_points, count);
    }
    rec.properness.push_back(row);
  }

  rec.agreement = rec.quasiconvex == rec.graded.overall;
  const std::string at = " at R = " + std::to_string(options.graded.radius);
  if (rec.agreement)
    rec.note = std::string(rec.quasiconvex ? "both sides positive" : "both sides negative") + at;
  else
    rec.note = "disagreement" + at + " (quasiconvex: " + (rec.quasiconvex ? "yes" : "no") +
               ", graded: " + (rec.graded.overall ? "yes" : "no") + "); flagged for radius escalation";
  return rec;
}

}  // namespace gglab
