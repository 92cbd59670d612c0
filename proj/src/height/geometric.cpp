#include "gglab/height/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gglab/errors.hpp"
#include "gglab/metric/geodesics.hpp"
#include "gglab/metric/local_search.hpp"

namespace gglab {

namespace {

std::vector<VertexId> intersect(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

HalfUnits floor_halves(const Dyadic& x) {
  if (x.is_infinite()) return kInfiniteHalves;
  return static_cast<HalfUnits>(std::floor(x.to_double() * 2.0));
}

/// Distance queries restricted to a marked vertex set.
class SetProbe {
 public:
  /// Graphs with at most `matrix_points` points get a point distance matrix.
  explicit SetProbe(const MetricGraph& g, std::size_t matrix_points = 0)
      : g_(g), search_(g), mark_(g.size(), 0) {
    const std::size_t n = g.point_count();
    if (n == 0 || n > matrix_points) return;
    matrix_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = g.distances_from(static_cast<VertexId>(i));
      std::copy(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n), matrix_.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
  }

  void mark(const std::vector<VertexId>& s) {
    clear();
    for (VertexId v : s) mark_[static_cast<std::size_t>(v)] = 1;
    marked_ = s;
  }

  /// Some pair of the marked set is at distance >= threshold.
  bool diameter_at_least(HalfUnits threshold) {
    if (marked_.size() < 2) return marked_.size() == 1 && threshold <= 0;
    if (threshold <= 0) return true;
    if (!matrix_.empty()) {
      for (std::size_t a = 0; a < marked_.size(); ++a) {
        const HalfUnits* row = &matrix_[static_cast<std::size_t>(marked_[a]) * g_.point_count()];
        for (std::size_t b = a + 1; b < marked_.size(); ++b)
          if (row[marked_[b]] >= threshold) return true;
      }
      return false;
    }
    for (VertexId x : marked_) {
      std::size_t seen = 0;
      search_.run(std::span(&x, 1), threshold - 1, [&](VertexId v, HalfUnits) {
        if (mark_[static_cast<std::size_t>(v)]) ++seen;
        return seen < marked_.size();
      });
      if (seen < marked_.size()) return true;
    }
    return false;
  }

  /// Farthest marked vertex from x and its distance (infinite if some marked vertex is unreachable).
  std::pair<VertexId, HalfUnits> farthest(VertexId x) {
    std::size_t seen = 0;
    VertexId far = x;
    HalfUnits far_d = 0;
    search_.run(std::span(&x, 1), kInfiniteHalves, [&](VertexId v, HalfUnits d) {
      if (mark_[static_cast<std::size_t>(v)]) {
        ++seen;
        far = v;
        far_d = d;
      }
      return seen < marked_.size();
    });
    if (seen < marked_.size()) return {far, kInfiniteHalves};
    return {far, far_d};
  }

  HalfUnits diameter(std::size_t exact_limit, bool* exact) {
    if (marked_.size() < 2) {
      if (exact) *exact = true;
      return 0;
    }
    if (!matrix_.empty()) {
      if (exact) *exact = true;
      HalfUnits best = 0;
      for (std::size_t a = 0; a < marked_.size(); ++a) {
        const HalfUnits* row = &matrix_[static_cast<std::size_t>(marked_[a]) * g_.point_count()];
        for (std::size_t b = a + 1; b < marked_.size(); ++b) best = std::max(best, row[marked_[b]]);
      }
      return best;
    }
    if (marked_.size() <= exact_limit) {
      if (exact) *exact = true;
      HalfUnits best = 0;
      for (VertexId x : marked_) {
        const HalfUnits d = farthest(x).second;
        if (!is_finite(d)) return kInfiniteHalves;
        best = std::max(best, d);
      }
      return best;
    }
    if (exact) *exact = false;
    const auto [u, du] = farthest(marked_.front());
    if (!is_finite(du)) return kInfiniteHalves;
    return farthest(u).second;
  }

  /// Every marked vertex lies within `radius` of the sources.
  bool covered_by(const std::vector<VertexId>& sources, HalfUnits radius) {
    if (sources.empty()) return marked_.empty();
    std::size_t seen = 0;
    search_.run(sources, radius, [&](VertexId v, HalfUnits) {
      if (mark_[static_cast<std::size_t>(v)]) ++seen;
      return seen < marked_.size();
    });
    return seen == marked_.size();
  }

  /// Points (ids below point_count) within `radius` of the sources, sorted.
  std::vector<VertexId> neighborhood(const std::vector<VertexId>& sources, HalfUnits radius) {
    std::vector<VertexId> out;
    const auto pc = static_cast<VertexId>(g_.point_count());
    for (const auto& [v, d] : search_.run(sources, radius))
      if (v < pc) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void clear() {
    for (VertexId v : marked_) mark_[static_cast<std::size_t>(v)] = 0;
    marked_.clear();
  }

  const MetricGraph& g_;
  LocalSearch search_;
  std::vector<char> mark_;
  std::vector<VertexId> marked_;
  std::vector<HalfUnits> matrix_;
};

struct ClauseScale {
  HalfUnits slack;
  HalfUnits rho;
};

ClauseScale clause_scale(const Dyadic& delta) {
  if (delta < Dyadic::fraction(1, 1)) return {2, 40};
  return {(delta + delta).to_halves(), (delta * Dyadic(20)).to_halves()};
}

struct ScanResult {
  std::vector<std::vector<GeometricIntersection>> levels;  // index 0 is level 2
  bool cap_hit = false;
  bool budget_hit = false;
};

std::vector<int> checked_grid(std::vector<int> grid) {
  if (grid.empty()) throw ConfigurationError("empty Delta grid");
  for (int d : grid)
    if (d <= 0) throw ConfigurationError("Delta grid values must be positive");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ScanResult scan(const GeometricSetting& s, int max_level, const GeometricOptions& o) {
  ScanResult res;
  if (max_level < 2) return res;
  const MetricGraph& g = *s.metric;
  const std::size_t points = g.point_count();
  const std::size_t k = s.pieces.size();
  const ClauseScale scale = clause_scale(s.delta);
  SetProbe probe(g, o.matrix_point_limit);
  std::vector<std::map<std::vector<std::size_t>, GeometricIntersection>> found(
      static_cast<std::size_t>(max_level - 1));
  std::size_t evaluated = 0;
  // Tuples use pairwise distinct cosets; a repeated trace is the same coset.
  std::vector<bool> repeated(k, false);
  {
    std::map<Piece, std::size_t> first;
    for (std::size_t p = 0; p < k; ++p) repeated[p] = !first.emplace(s.pieces[p], p).second;
  }

  for (int Delta : checked_grid(o.delta_grid)) {
    const HalfUnits reach = 2 * Delta;
    const HalfUnits min_diam = 20 * Delta;
    std::vector<std::vector<VertexId>> nbhd(k);
    std::vector<std::vector<std::size_t>> near(points);
    for (std::size_t p = 0; p < k; ++p) {
      if (repeated[p]) continue;
      for (VertexId v : probe.neighborhood(s.pieces[p], reach))
        if (s.safe[static_cast<std::size_t>(v)]) nbhd[p].push_back(v);
      for (VertexId v : nbhd[p]) near[static_cast<std::size_t>(v)].push_back(p);
    }
    // Lesser neighborhoods for the rho clause, built on demand.
    const HalfUnits lesser = reach - scale.slack;
    std::map<std::size_t, std::vector<VertexId>> lesser_nbhd;
    auto accepted = [&](const std::vector<std::size_t>& tuple, const std::vector<VertexId>& J) {
      if (lesser < 0) return true;
      std::vector<VertexId> inner;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        auto it = lesser_nbhd.find(tuple[i]);
        if (it == lesser_nbhd.end())
          it = lesser_nbhd.emplace(tuple[i], probe.neighborhood(s.pieces[tuple[i]], lesser)).first;
        inner = i == 0 ? it->second : intersect(inner, it->second);
        if (inner.empty()) return true;
      }
      probe.mark(J);
      return !probe.covered_by(inner, scale.rho);
    };

    std::vector<std::pair<std::vector<std::size_t>, std::vector<VertexId>>> frontier;
    auto consider = [&](std::vector<std::size_t> tuple, std::vector<VertexId> J, int level,
                        decltype(frontier)& next) {
      if (++evaluated > o.candidate_budget) {
        res.budget_hit = true;
        return false;
      }
      probe.mark(J);
      if (!probe.diameter_at_least(min_diam)) return true;
      if (accepted(tuple, J)) {
        auto& slot = found[static_cast<std::size_t>(level - 2)];
        if (!slot.count(tuple)) {
          GeometricIntersection gi;
          gi.level = level;
          gi.tuple = tuple;
          gi.Delta = Delta;
          gi.J = J;
          slot.emplace(tuple, std::move(gi));
        }
      }
      next.emplace_back(std::move(tuple), std::move(J));
      return true;
    };

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& list : near)
      for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = a + 1; b < list.size(); ++b) pairs.emplace_back(list[a], list[b]);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [a, b] : pairs)
      if (!consider({a, b}, intersect(nbhd[a], nbhd[b]), 2, frontier)) break;

    for (int level = 3; level <= max_level && !frontier.empty() && !res.budget_hit; ++level) {
      decltype(frontier) next;
      for (const auto& [tuple, J] : frontier) {
        std::vector<std::size_t> cands;
        for (VertexId x : J)
          for (std::size_t c : near[static_cast<std::size_t>(x)])
            if (c > tuple.back()) cands.push_back(c);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (std::size_t c : cands) {
          auto t = tuple;
          t.push_back(c);
          if (!consider(std::move(t), intersect(J, nbhd[c]), level, next)) break;
        }
        if (res.budget_hit) break;
      }
      frontier = std::move(next);
    }
    if (!frontier.empty() && !res.budget_hit && frontier.front().first.size() == static_cast<std::size_t>(max_level))
      res.cap_hit = true;
    if (res.budget_hit) break;
  }

  for (auto& slot : found) {
    std::vector<GeometricIntersection> level;
    for (auto& [tuple, gi] : slot) {
      probe.mark(gi.J);
      gi.diameter = Dyadic::from_halves(probe.diameter(o.exact_diameter_limit, &gi.diameter_exact));
      level.push_back(std::move(gi));
    }
    res.levels.push_back(std::move(level));
  }
  while (!res.levels.empty() && res.levels.back().empty()) res.levels.pop_back();
  return res;
}

}  // namespace

GeometricSetting make_geometric_setting(const CayleyBall& ball, const MetricGraph& metric, Family pieces,
                                        Dyadic delta) {
  if (metric.point_count() != ball.size())
    throw DomainError("metric points do not match the ball (" + std::to_string(metric.point_count()) + " vs " +
                      std::to_string(ball.size()) + ")");
  GeometricSetting s;
  s.metric = &metric;
  s.safe.resize(ball.size());
  for (std::size_t v = 0; v < ball.size(); ++v) s.safe[v] = ball.in_safe_ball(static_cast<VertexId>(v));
  s.pieces = std::move(pieces);
  s.delta = delta;
  s.safe_radius = ball.safe_radius;
  return s;
}

std::vector<int> default_delta_grid(int safe_radius) {
  std::vector<int> grid{1};
  for (int d = 2; d <= std::max(1, safe_radius / 10); d *= 2) grid.push_back(d);
  return grid;
}

std::vector<GeometricIntersection> enumerate_geometric_intersections(const GeometricSetting& s, int level,
                                                                     const GeometricOptions& options) {
  if (level < 2) throw ConfigurationError("geometric intersections start at level 2");
  auto res = scan(s, level, options);
  if (res.levels.size() < static_cast<std::size_t>(level - 1)) return {};
  return std::move(res.levels.back());
}

GeometricHeightReport geometric_height(const GeometricSetting& s, const GeometricOptions& options) {
  if (!(options.bound > Dyadic(0))) throw ConfigurationError("bound B must be positive");
  GeometricHeightReport rep;
  rep.bound = options.bound;
  rep.effective_bound = options.bound;
  if (s.safe_radius > 0) rep.effective_bound = min(options.bound, Dyadic(2 * s.safe_radius - 1));
  rep.delta_grid = checked_grid(options.delta_grid);
  const HalfUnits above = floor_halves(rep.effective_bound) + 1;

  SetProbe probe(*s.metric, options.matrix_point_limit);
  for (const Piece& p : s.pieces) {
    std::vector<VertexId> clipped;
    for (VertexId v : p)
      if (s.safe[static_cast<std::size_t>(v)]) clipped.push_back(v);
    probe.mark(clipped);
    if (probe.diameter_at_least(above)) {
      rep.unbounded_pieces = true;
      break;
    }
  }
  auto res = scan(s, options.max_level, options);
  rep.levels = std::move(res.levels);
  rep.level_cap_hit = res.cap_hit;
  rep.budget_hit = res.budget_hit;
  rep.height = rep.unbounded_pieces ? 1 : 0;
  for (std::size_t i = 0; i < rep.levels.size(); ++i)
    for (const auto& gi : rep.levels[i])
      if (gi.diameter > rep.effective_bound) rep.height = std::max(rep.height, static_cast<int>(i) + 2);
  rep.note = "lower bound from a finite ball";
  if (rep.effective_bound < rep.bound) rep.note += "; B capped at " + rep.effective_bound.to_string();
  if (rep.level_cap_hit) rep.note += "; level cap " + std::to_string(options.max_level) + " reached";
  if (rep.budget_hit) rep.note += "; candidate budget exhausted";
  return rep;
}

Dyadic set_diameter(const MetricGraph& metric, const std::vector<VertexId>& points, std::size_t exact_limit,
                    bool* exact) {
  SetProbe probe(metric);
  std::vector<VertexId> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  probe.mark(sorted);
  return Dyadic::from_halves(probe.diameter(exact_limit, exact));
}

Dyadic coarse_connectivity(const MetricGraph& metric, const std::vector<VertexId>& points, int max_mesh) {
  const std::size_t m = points.size();
  if (m <= 1) return Dyadic(0);
  std::vector<std::int32_t> index(metric.size(), -1);
  for (std::size_t i = 0; i < m; ++i) index[static_cast<std::size_t>(points[i])] = static_cast<std::int32_t>(i);
  LocalSearch search(metric);
  for (int D = 1; D <= max_mesh; ++D) {
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t parts = m;
    for (std::size_t i = 0; i < m && parts > 1; ++i)
      for (const auto& [v, d] : search.run(std::span(&points[i], 1), 2 * D)) {
        const auto j = index[static_cast<std::size_t>(v)];
        if (j < 0) continue;
        const auto a = root(i), b = root(static_cast<std::size_t>(j));
        if (a != b) {
          parent[a] = b;
          --parts;
        }
      }
    if (parts == 1) return Dyadic(D);
  }
  return Dyadic::infinity();
}

ConcentrationResult ball_concentration_check(const MetricGraph& metric, const Family& cosets,
                                             const std::vector<VertexId>& J, Dyadic delta, Dyadic C) {
  if (cosets.empty()) throw DomainError("no cosets given");
  ConcentrationResult r;
  r.allowed = C + C + delta * Dyadic(10);
  if (cosets.size() == 1) {
    if (cosets[0].empty()) throw DomainError("empty coset trace");
    r.found = true;
    r.x = cosets[0].front();
    r.radius = Dyadic(0);
    r.note = "single coset";
    return r;
  }
  std::vector<VertexId> sorted = J;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2) {
    r.note = "hypothesis fails: intersection has fewer than two points; truncated";
    return r;
  }
  SetProbe probe(metric);
  probe.mark(sorted);
  const VertexId u = probe.farthest(sorted.front()).first;
  const VertexId v = probe.farthest(u).first;
  std::vector<std::vector<HalfUnits>> to_coset;
  for (const Piece& c : cosets) to_coset.push_back(metric.distances_from(std::span<const VertexId>(c)));
  HalfUnits best = kInfiniteHalves;
  const auto pc = static_cast<VertexId>(metric.point_count());
  for (VertexId x : geodesic_interval(metric, u, v).interval) {
    if (x >= pc) continue;
    HalfUnits worst = 0;
    for (const auto& row : to_coset) worst = std::max(worst, row[static_cast<std::size_t>(x)]);
    if (worst < best) {
      best = worst;
      r.x = x;
    }
  }
  if (r.x == kNoVertex || !is_finite(best)) {
    r.radius = Dyadic::infinity();
    r.note = "no geodesic point reaches every coset; truncated";
    return r;
  }
  r.radius = Dyadic::from_halves(best);
  r.found = r.radius <= r.allowed;
  if (!r.found) r.note = "no geodesic point within 2C + 10 delta of every coset; truncated";
  return r;
}

std::vector<QiLevelReport> qi_intersection_check(const GeometricSetting& s,
                                                 const std::vector<std::vector<Piece>>& levels,
                                                 const QiOptions& options) {
  const MetricGraph& g = *s.metric;
  std::vector<QiLevelReport> out;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    QiLevelReport rep;
    rep.level = static_cast<int>(n) + 1;
    rep.pieces = levels[n].size();
    const std::size_t examined = std::min(levels[n].size(), options.piece_limit);
    rep.pieces_examined = examined;
    for (std::size_t i = 0; i < examined; ++i) {
      const Piece& p = levels[n][i];
      const Dyadic mesh = coarse_connectivity(g, p, options.max_mesh);
      rep.connectivity = max(rep.connectivity, mesh);
      if (p.size() < 2) continue;
      if (p.size() > options.undistortion_point_limit) {
        ++rep.undistortion_skipped;
        continue;
      }
      if (mesh.is_infinite()) {
        rep.lambda = Dyadic::infinity();
        continue;
      }
      rep.lambda = max(rep.lambda, undistortion_check(g, p, mesh, options.lambda_max).lambda_hat);
    }
    for (std::size_t i = 0; i < examined; ++i) {
      const Piece& target = levels[n][i];
      if (target.empty()) continue;
      std::vector<std::vector<HalfUnits>> rows;
      for (VertexId t : target) rows.push_back(g.distances_from(t));
      for (std::size_t j = 0; j < examined; ++j) {
        if (j == i || levels[n][j].empty()) continue;
        const Piece& from = levels[n][j];
        std::vector<bool> hit(target.size(), false);
        for (VertexId y : from) {
          const auto yi = static_cast<std::size_t>(y);
          HalfUnits nearest = kInfiniteHalves;
          for (const auto& row : rows) nearest = std::min(nearest, row[yi]);
          if (!is_finite(nearest)) continue;
          for (std::size_t a = 0; a < rows.size(); ++a)
            if (rows[a][yi] == nearest) hit[a] = true;
        }
        HalfUnits diam = 0, contain = 0;
        for (std::size_t a = 0; a < rows.size(); ++a) {
          if (!hit[a]) continue;
          for (std::size_t b = 0; b < rows.size(); ++b)
            if (hit[b]) diam = std::max(diam, rows[a][static_cast<std::size_t>(target[b])]);
          HalfUnits to_from = kInfiniteHalves;
          for (VertexId y : from) to_from = std::min(to_from, rows[a][static_cast<std::size_t>(y)]);
          contain = std::max(contain, to_from);
        }
        if (contain < diam) ++rep.containment_pairs;
        rep.projection = max(rep.projection, Dyadic::from_halves(std::min(diam, contain)));
      }
    }
    rep.passes = rep.connectivity <= options.bound && rep.lambda <= options.lambda_max &&
                 rep.projection <= options.bound;
    out.push_back(rep);
  }
  return out;
}

}  // namespace gglab
