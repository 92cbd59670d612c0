#include "gglab/electrics/embedding.hpp"

#include <algorithm>
#include <random>

#include "gglab/metric/geodesics.hpp"
#include "gglab/metric/local_search.hpp"

namespace gglab {

namespace {

/// Projection of `from` onto a large target: each point's nearest target
/// points come from a search bounded by its distance to the target. The
/// diameter is exact up to `exact_limit` projected points and a two-sweep
/// lower bound beyond.
std::pair<std::vector<VertexId>, HalfUnits> large_projection(const MetricGraph& metric,
                                                             const std::vector<HalfUnits>& nearest,
                                                             const Piece& from, LocalSearch& search,
                                                             std::vector<char>& in_target, std::size_t exact_limit) {
  std::vector<VertexId> proj;
  for (VertexId y : from) {
    const HalfUnits r = nearest[static_cast<std::size_t>(y)];
    if (!is_finite(r)) continue;
    for (const auto& [v, d] : search.run(std::span(&y, 1), r))
      if (d == r && in_target[static_cast<std::size_t>(v)]) proj.push_back(v);
  }
  std::sort(proj.begin(), proj.end());
  proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
  if (proj.size() < 2) return {proj, 0};
  std::vector<char> mark(metric.size(), 0);
  for (VertexId v : proj) mark[static_cast<std::size_t>(v)] = 1;
  auto farthest = [&](VertexId x) {
    std::size_t seen = 0;
    std::pair<VertexId, HalfUnits> far{x, 0};
    search.run(std::span(&x, 1), kInfiniteHalves, [&](VertexId v, HalfUnits d) {
      if (mark[static_cast<std::size_t>(v)]) {
        ++seen;
        far = {v, d};
      }
      return seen < proj.size();
    });
    return far;
  };
  HalfUnits diam = 0;
  if (proj.size() <= exact_limit) {
    for (VertexId x : proj) diam = std::max(diam, farthest(x).second);
  } else {
    diam = farthest(farthest(proj.front()).first).second;
  }
  return {proj, diam};
}

}  // namespace

CoboundednessReport coboundedness(const MetricGraph& metric, const Family& family,
                                  const CoboundednessOptions& options) {
  CoboundednessReport rep;
  std::vector<std::size_t> onto = options.onto;
  if (onto.empty())
    for (std::size_t i = 0; i < family.size(); ++i) onto.push_back(i);
  const std::size_t n = metric.size();
  LocalSearch search(metric);

  auto record = [&](std::size_t i, std::size_t j, HalfUnits diam, const std::vector<VertexId>& pts) {
    ProjectionRecord rec{i, j, Dyadic::from_halves(diam), false, false};
    ++rep.pairs;
    if (rep.pairs == 1 || rec.diameter > rep.max_diameter) {
      rep.max_diameter = rec.diameter;
      rep.witness_onto = i;
      rep.witness_from = j;
    }
    if (!options.diameter_threshold.is_infinite() && rec.diameter > options.diameter_threshold) {
      const HalfUnits radius = options.containment_radius.is_infinite()
                                   ? kInfiniteHalves
                                   : static_cast<HalfUnits>(options.containment_radius.to_double() * 2.0);
      const auto to_j = distance_to_set(metric, family[j], radius);
      rec.containment = std::all_of(pts.begin(), pts.end(), [&](VertexId p) {
        return is_finite(to_j[static_cast<std::size_t>(p)]);
      });
      if (rec.containment) {
        ++rep.containment_branch;
      } else {
        rec.violation = true;
        ++rep.violations;
      }
    }
    if (options.keep_all || rec.violation) rep.records.push_back(rec);
  };

  for (std::size_t i : onto) {
    const Piece& target = family.at(i);
    if (target.empty()) continue;
    const std::size_t m = target.size();
    if (m > options.row_limit) {
      const auto nearest = distance_to_set(metric, target);
      std::vector<char> in_target(n, 0);
      for (VertexId v : target) in_target[static_cast<std::size_t>(v)] = 1;
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (j == i) continue;
        const Piece& from = family[j];
        Piece sample;
        const std::size_t stride = (from.size() + options.from_sample - 1) / std::max<std::size_t>(1, options.from_sample);
        for (std::size_t k = 0; k < from.size(); k += std::max<std::size_t>(1, stride)) sample.push_back(from[k]);
        auto [pts, diam] = large_projection(metric, nearest, sample, search, in_target, options.exact_projection_limit);
        if (pts.size() > options.exact_projection_limit || sample.size() < from.size()) ++rep.diameter_lower_bounds;
        record(i, j, diam, pts);
      }
      continue;
    }
    std::vector<std::vector<HalfUnits>> rows(m);
    for (std::size_t a = 0; a < m; ++a) rows[a] = metric.distances_from(target[a]);
    // Nearest distance from every vertex to the target piece.
    std::vector<HalfUnits> nearest(n, kInfiniteHalves);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], rows[a][v]);
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (j == i) continue;
      std::vector<bool> hit(m, false);
      for (VertexId y : family[j]) {
        const auto yi = static_cast<std::size_t>(y);
        if (!is_finite(nearest[yi])) continue;
        for (std::size_t a = 0; a < m; ++a)
          if (rows[a][yi] == nearest[yi]) hit[a] = true;
      }
      std::vector<std::size_t> proj;
      for (std::size_t a = 0; a < m; ++a)
        if (hit[a]) proj.push_back(a);
      HalfUnits diam = 0;
      for (std::size_t a : proj)
        for (std::size_t b : proj) {
          const HalfUnits d = rows[a][static_cast<std::size_t>(target[b])];
          if (is_finite(d)) diam = std::max(diam, d);
        }
      std::vector<VertexId> pts;
      for (std::size_t a : proj) pts.push_back(target[a]);
      record(i, j, diam, pts);
    }
  }
  return rep;
}

bool psi_proper(const PsiTable& table, Dyadic threshold, std::string* note) {
  auto say = [&](const std::string& s) {
    if (note) *note = s;
  };
  if (table.buckets.empty() || table.max_piece_diameter <= threshold) {
    say("vacuous: every scanned piece has base diameter at most " + threshold.to_string());
    return true;
  }
  for (std::size_t k = 1; k < table.buckets.size(); ++k) {
    if (!(table.buckets[k - 1].raw < table.buckets[k].raw)) {
      say("psi not strictly increasing at r = " + std::to_string(table.buckets[k].r));
      return false;
    }
  }
  if (!(table.buckets.back().raw > threshold)) {
    say("psi at the largest observed radius does not exceed " + threshold.to_string());
    return false;
  }
  say("psi strictly increasing over observed radii and above " + threshold.to_string() + " at r = " +
      std::to_string(table.buckets.back().r));
  return true;
}

EmbeddingReport coarse_embedding_report(const ConedSpace& cs, const EmbeddingOptions& options) {
  EmbeddingReport rep;
  rep.scope = options.scope_note;
  rep.delta_el = delta_hyperbolicity(cs.graph(), options.delta);

  PsiOptions po;
  po.pieces = options.scope;
  po.max_sources = options.max_psi_sources;
  po.seed = options.seed;
  rep.psi_table = psi_table(cs, po);
  rep.proper = psi_proper(rep.psi_table, options.proper_threshold, &rep.proper_note);

  if (options.compute_cobounded && cs.piece_count() >= 2) {
    CoboundednessOptions co;
    co.onto = options.scope;
    rep.cobounded = coboundedness(cs.graph(), cs.family(), co);
    rep.cobounded_max = rep.cobounded.max_diameter;
  }

  std::vector<std::size_t> scope = options.scope;
  if (scope.empty())
    for (std::size_t i = 0; i < cs.piece_count(); ++i) scope.push_back(i);
  std::mt19937_64 rng(options.seed);
  for (std::size_t i : scope) {
    const Piece& p = cs.family().at(i);
    std::vector<VertexId> domain = p;
    if (domain.size() > options.qc_point_budget) {
      std::vector<VertexId> pick;
      std::sample(domain.begin(), domain.end(), std::back_inserter(pick),
                  static_cast<std::ptrdiff_t>(options.qc_point_budget), rng);
      domain = std::move(pick);
    }
    const auto pairs = all_pairs(domain);
    const auto qc = quasiconvexity_constant(cs.graph(), p, pairs);
    rep.piece_qc.push_back(qc.constant);
    rep.piece_qc_max = max(rep.piece_qc_max, qc.constant);
  }
  rep.verdict = !rep.delta_el.delta4.is_infinite() && rep.proper;
  return rep;
}

EmbeddingReport coarse_embedding_report(const MetricGraph& base, const Family& family,
                                        const EmbeddingOptions& options) {
  return coarse_embedding_report(electrify(base, family), options);
}

}  // namespace gglab
