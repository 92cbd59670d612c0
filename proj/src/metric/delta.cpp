#include "gglab/metric/delta.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "gglab/errors.hpp"

namespace gglab {

namespace {

HalfUnits checked(HalfUnits d) {
  if (!is_finite(d)) throw DomainError("points lie in different components");
  return d;
}

/// Largest minus second largest of three sums.
HalfUnits spread(HalfUnits s1, HalfUnits s2, HalfUnits s3) {
  std::array<HalfUnits, 3> s{s1, s2, s3};
  std::sort(s.begin(), s.end());
  return s[2] - s[1];
}

struct ScanResult {
  HalfUnits best = 0;  // (L1 - L2) in half units
  std::array<std::size_t, 4> witness{0, 0, 0, 0};
  std::uint64_t evaluated = 0;
};

/// Pair-sorted scan over an m x m distance matrix. A quadruple's value is at
/// most twice the smaller of the two distances in its largest pair-sum, so the
/// outer loop over pairs (by decreasing distance) stops once 2*d <= best.
ScanResult pruned_scan(const std::vector<HalfUnits>& D, std::size_t m, std::uint64_t budget) {
  ScanResult r;
  if (m < 4) return r;
  struct Pair {
    HalfUnits d;
    std::uint32_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      pairs.push_back({D[i * m + j], static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d > b.d; });
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const Pair& p = pairs[a];
    if (2 * p.d <= r.best) break;
    const HalfUnits* rx = &D[p.i * m];
    const HalfUnits* ry = &D[p.j * m];
    for (std::size_t b = 0; b < a; ++b) {
      const Pair& q = pairs[b];
      const HalfUnits s1 = p.d + q.d;
      const HalfUnits s2 = rx[q.i] + ry[q.j];
      const HalfUnits s3 = rx[q.j] + ry[q.i];
      const HalfUnits v = spread(s1, s2, s3);
      if (v > r.best) {
        r.best = v;
        r.witness = {p.i, p.j, q.i, q.j};
      }
    }
    r.evaluated += a;
    if (r.evaluated > budget)
      throw ResourceError("quadruple", budget, "exact four-point scan; use sampled mode");
  }
  return r;
}

std::vector<HalfUnits> submatrix(const MetricGraph& g, const std::vector<VertexId>& vs) {
  const std::size_t m = vs.size();
  std::vector<HalfUnits> D(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto full = g.distances_from(vs[i]);
    for (std::size_t j = 0; j < m; ++j) D[i * m + j] = checked(full[static_cast<std::size_t>(vs[j])]);
  }
  return D;
}

/// Distance matrix of a biconnected block. Geodesics between vertices of a
/// block stay inside it, so the searches run on the block's own subgraph.
std::vector<HalfUnits> block_matrix(const MetricGraph& g, const std::vector<VertexId>& members) {
  const std::size_t m = members.size();
  auto local = [&](VertexId v) -> std::int64_t {
    const auto it = std::lower_bound(members.begin(), members.end(), v);
    return it != members.end() && *it == v ? it - members.begin() : -1;
  };
  std::vector<std::vector<std::pair<std::size_t, HalfUnits>>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (const Arc& a : g.neighbors(members[i]))
      if (const auto j = local(a.to); j >= 0) adj[i].emplace_back(static_cast<std::size_t>(j), a.length);
  std::vector<HalfUnits> D(m * m, kInfiniteHalves);
  using Item = std::pair<HalfUnits, std::size_t>;
  for (std::size_t s = 0; s < m; ++s) {
    HalfUnits* row = &D[s * m];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[s] = 0;
    heap.emplace(0, s);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != row[v]) continue;
      for (const auto& [w, len] : adj[v])
        if (d + len < row[w]) {
          row[w] = d + len;
          heap.emplace(row[w], w);
        }
    }
    for (std::size_t j = 0; j < m; ++j) checked(row[j]);
  }
  return D;
}

/// Vertex sets of biconnected blocks with at least four vertices.
std::vector<std::vector<VertexId>> large_blocks(const MetricGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<VertexId, VertexId>> edge_stack;
  std::vector<std::vector<VertexId>> blocks;
  int timer = 0;
  struct Frame {
    VertexId v;
    VertexId parent;
    std::size_t next;
    bool parent_skipped;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{static_cast<VertexId>(root), kNoVertex, 0, false}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto nbrs = g.neighbors(f.v);
      if (f.next < nbrs.size()) {
        const VertexId w = nbrs[f.next++].to;
        if (w == f.v) continue;
        if (w == f.parent && !f.parent_skipped) {
          f.parent_skipped = true;
          continue;
        }
        const auto wi = static_cast<std::size_t>(w);
        if (disc[wi] == -1) {
          edge_stack.push_back({f.v, w});
          disc[wi] = low[wi] = timer++;
          stack.push_back({w, f.v, 0, false});
        } else if (disc[wi] < disc[static_cast<std::size_t>(f.v)]) {
          edge_stack.push_back({f.v, w});
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[wi]);
        }
        continue;
      }
      const VertexId v = f.v;
      const VertexId parent = f.parent;
      stack.pop_back();
      if (parent == kNoVertex) continue;
      const auto pi = static_cast<std::size_t>(parent);
      low[pi] = std::min(low[pi], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[pi]) {
        std::vector<VertexId> block;
        while (!edge_stack.empty()) {
          const auto e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e.first);
          block.push_back(e.second);
          if (e.first == parent && e.second == v) break;
        }
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        if (block.size() >= 4) blocks.push_back(std::move(block));
      }
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

DeltaReport sampled(const MetricGraph& g, const DeltaOptions& options) {
  const std::size_t n = g.size();
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<VertexId> sample;
  std::mt19937_64 rng(options.seed);
  const std::size_t k = std::min(options.sample_vertices, n);
  std::sample(all.begin(), all.end(), std::back_inserter(sample), static_cast<std::ptrdiff_t>(k), rng);
  // The sample size bounds the work; the exact-mode budget does not apply.
  DeltaReport rep = delta_on_subset(g, sample, std::numeric_limits<std::uint64_t>::max());
  rep.exact = false;
  rep.sample_vertices = sample.size();
  rep.seed = options.seed;
  rep.note = "lower bound from all quadruples of a seeded vertex sample";
  return rep;
}

}  // namespace

Dyadic gromov_product(const MetricGraph& g, VertexId x, VertexId y, VertexId w) {
  const HalfUnits xw = checked(g.distance(w, x));
  const HalfUnits yw = checked(g.distance(w, y));
  const HalfUnits xy = checked(g.distance(x, y));
  return Dyadic::fraction(xw + yw - xy, 2);
}

Dyadic four_point_value(const MetricGraph& g, const std::array<VertexId, 4>& q) {
  const auto d = [&](int a, int b) { return checked(g.distance(q[a], q[b])); };
  const HalfUnits v = spread(d(0, 1) + d(2, 3), d(0, 2) + d(1, 3), d(0, 3) + d(1, 2));
  return Dyadic::fraction(v, 2);
}

DeltaReport delta_on_subset(const MetricGraph& g, const std::vector<VertexId>& subset,
                            std::uint64_t quadruple_budget) {
  DeltaReport rep;
  const auto D = submatrix(g, subset);
  const ScanResult r = pruned_scan(D, subset.size(), quadruple_budget);
  rep.delta4 = Dyadic::fraction(r.best, 2);
  rep.quadruples_evaluated = r.evaluated;
  rep.blocks_scanned = 1;
  if (subset.size() >= 4)
    for (int i = 0; i < 4; ++i) rep.witness[static_cast<std::size_t>(i)] = subset[r.witness[static_cast<std::size_t>(i)]];
  return rep;
}

DeltaReport delta_hyperbolicity(const MetricGraph& g, const DeltaOptions& options) {
  if (g.size() == 0) return {};
  if (!g.connected()) throw DomainError("delta_hyperbolicity requires a connected graph");
  if (options.mode == DeltaMode::Sampled) return sampled(g, options);
  try {
    DeltaReport rep;
    rep.exact = true;
    HalfUnits best = -1;
    for (const auto& block : large_blocks(g)) {
      const std::vector<VertexId>& members = block;
      if (members.size() > options.block_vertex_budget)
        throw ResourceError("block vertex", options.block_vertex_budget,
                            "biconnected block of " + std::to_string(members.size()) + " vertices");
      const auto D = block_matrix(g, members);
      const ScanResult r = pruned_scan(D, members.size(), options.quadruple_budget - rep.quadruples_evaluated);
      rep.quadruples_evaluated += r.evaluated;
      ++rep.blocks_scanned;
      if (r.best > best) {
        best = r.best;
        for (std::size_t i = 0; i < 4; ++i) rep.witness[i] = members[r.witness[i]];
      }
    }
    rep.delta4 = Dyadic::fraction(std::max<HalfUnits>(best, 0), 2);
    if (best < 0) {
      rep.note = "no biconnected block with four vertices";
      if (g.size() >= 4) rep.witness = {0, 1, 2, 3};
    }
    return rep;
  } catch (const ResourceError&) {
    if (options.mode != DeltaMode::Auto) throw;
    return sampled(g, options);
  }
}

}  // namespace gglab
