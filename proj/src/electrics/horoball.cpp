#include "gglab/electrics/horoball.hpp"

#include <algorithm>
#include <random>

#include "gglab/errors.hpp"
#include "gglab/metric/geodesics.hpp"

namespace gglab {

VertexId Horoballification::at(std::size_t piece, std::size_t point_index, int level) const {
  const auto& col = columns.at(piece);
  const std::size_t width = col.size() / static_cast<std::size_t>(depth);
  return col.at(static_cast<std::size_t>(level - 1) * width + point_index);
}

Horoballification horoballify(const MetricGraph& base, const Family& family, int depth, std::size_t pair_budget) {
  if (depth < 1) throw DomainError("horoball depth must be at least 1");
  std::size_t pairs = 0;
  for (const Piece& p : family) pairs += p.size() * p.size();
  if (pairs * static_cast<std::size_t>(depth) > pair_budget)
    throw ResourceError("horoball pair", pair_budget,
                        "depth " + std::to_string(depth) + " over pieces with " + std::to_string(pairs) + " point pairs");
  Horoballification h;
  h.graph = base;
  h.graph.set_point_count(base.point_count());
  h.depth = depth;
  for (std::size_t i = 0; i < family.size(); ++i) {
    Piece piece = family[i];
    std::sort(piece.begin(), piece.end());
    piece.erase(std::unique(piece.begin(), piece.end()), piece.end());
    const std::size_t m = piece.size();
    std::vector<VertexId> col(m * static_cast<std::size_t>(depth));
    for (std::size_t j = 0; j < m; ++j) col[j] = piece[j];
    for (int k = 2; k <= depth; ++k)
      for (std::size_t j = 0; j < m; ++j)
        col[static_cast<std::size_t>(k - 1) * m + j] =
            h.graph.add_vertex("h" + std::to_string(i) + ":" + base.name(piece[j]) + ":" + std::to_string(k));
    for (int k = 2; k <= depth; ++k)
      for (std::size_t j = 0; j < m; ++j)
        h.graph.add_edge(col[static_cast<std::size_t>(k - 2) * m + j], col[static_cast<std::size_t>(k - 1) * m + j], 2);
    const SubsetMetric dY = restricted_metric(base, piece);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const HalfUnits d = dY.at(a, b);
        if (!is_finite(d) || d == 0) continue;
        // Lowest level k with d_Y <= 2^k (d in half units: d <= 2^(k+1)).
        int k = 1;
        while (k <= depth && d > (HalfUnits{1} << (k + 1))) ++k;
        for (; k <= depth; ++k)
          h.graph.add_edge(col[static_cast<std::size_t>(k - 1) * m + a], col[static_cast<std::size_t>(k - 1) * m + b], 2);
      }
    h.horoballs.push_back(col);
    std::sort(h.horoballs.back().begin(), h.horoballs.back().end());
    h.columns.push_back(std::move(col));
  }
  h.graph.meta["horoball_depth"] = std::to_string(depth);
  h.graph.meta["horoball_model"] = "horizontal edges at level k join points within 2^k in the piece metric";
  return h;
}

DoubleElectrificationReport double_electrification_check(const MetricGraph& base, const Family& family,
                                                         const DoubleElectrificationOptions& options) {
  DoubleElectrificationReport rep;
  rep.degenerate_depth = options.depth <= 2;
  const ConedSpace x_el = electrify(base, family);
  const Horoballification xh = horoballify(base, family, options.depth);
  const ConedSpace xh_el = electrify(xh.graph, xh.horoballs);

  const std::size_t n = base.size();
  // Map e from vertices of (X_h)_el to vertices of X_el.
  std::vector<VertexId> e(xh_el.graph().size(), kNoVertex);
  for (std::size_t v = 0; v < n; ++v) e[v] = static_cast<VertexId>(v);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::size_t m = xh.columns[i].size() / static_cast<std::size_t>(options.depth);
    for (int k = 2; k <= options.depth; ++k)
      for (std::size_t j = 0; j < m; ++j)
        e[static_cast<std::size_t>(xh.at(i, j, k))] = k > 2 ? x_el.cone(i) : xh.at(i, j, 1);
    e[static_cast<std::size_t>(xh_el.cone(i))] = x_el.cone(i);
  }

  std::mt19937_64 rng(options.seed);
  const auto total = static_cast<VertexId>(xh_el.graph().size());
  std::uniform_int_distribution<VertexId> any(0, total - 1);
  HalfUnits max_add = 0;
  for (std::size_t s = 0; s < options.pairs; ++s) {
    const VertexId p = any(rng);
    const VertexId q = any(rng);
    const HalfUnits d_prime = xh_el.graph().distances_from(p)[static_cast<std::size_t>(q)];
    const HalfUnits d = x_el.graph().distances_from(e[static_cast<std::size_t>(p)])[static_cast<std::size_t>(e[static_cast<std::size_t>(q)])];
    ++rep.pairs_checked;
    if (!is_finite(d) || !is_finite(d_prime)) {
      if (is_finite(d) != is_finite(d_prime)) {
        rep.lambda_hat = Dyadic::infinity();
        rep.witness = {p, q};
      }
      continue;
    }
    const Dyadic l = quarter_grid_lambda(d_prime, d);
    if (l > rep.lambda_hat) {
      rep.lambda_hat = l;
      rep.witness = {p, q};
    }
    max_add = std::max(max_add, static_cast<HalfUnits>(std::abs(d - d_prime)));
  }
  rep.max_additive = Dyadic::from_halves(max_add);

  // Isometry on the image of X_el: base vertices and cones correspond directly.
  const auto x_total = static_cast<VertexId>(x_el.graph().size());
  std::uniform_int_distribution<VertexId> in_x(0, x_total - 1);
  const auto lift = [&](VertexId v) {
    return static_cast<std::size_t>(v) < n ? v : xh_el.cone(static_cast<std::size_t>(v) - n);
  };
  for (std::size_t s = 0; s < options.isometry_pairs; ++s) {
    const VertexId p = in_x(rng);
    const VertexId q = in_x(rng);
    const HalfUnits a = x_el.graph().distances_from(p)[static_cast<std::size_t>(q)];
    const HalfUnits b = xh_el.graph().distances_from(lift(p))[static_cast<std::size_t>(lift(q))];
    ++rep.isometry_pairs_checked;
    if (a != b) rep.isometry_ok = false;
  }
  return rep;
}

}  // namespace gglab
