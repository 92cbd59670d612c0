#include "gglab/electrics/coned_space.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "gglab/errors.hpp"

namespace gglab {

ConedSpace::ConedSpace(std::shared_ptr<const MetricGraph> base, Family family)
    : base_(std::move(base)), family_(std::move(family)), graph_(*base_) {
  for (std::size_t i = 0; i < family_.size(); ++i) {
    Piece& p = family_[i];
    if (p.empty()) throw InputError("piece " + std::to_string(i) + " is empty");
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.front() < 0 || static_cast<std::size_t>(p.back()) >= base_->size())
      throw InputError("piece " + std::to_string(i) + " contains a vertex outside the base graph");
  }
  graph_.set_point_count(base_->point_count());
  for (std::size_t i = 0; i < family_.size(); ++i) {
    const VertexId c = graph_.add_vertex("cone:" + std::to_string(i));
    for (VertexId y : family_[i]) graph_.add_edge(c, y, 1);
  }
  graph_.meta["cone_edge_length"] = "0.5";
}

bool ConedSpace::in_piece(std::size_t i, VertexId v) const {
  const Piece& p = family_.at(i);
  return std::binary_search(p.begin(), p.end(), v);
}

ConedSpace electrify(const MetricGraph& base, Family family) {
  return ConedSpace(std::make_shared<const MetricGraph>(base), std::move(family));
}

ConedSpace electrify(std::shared_ptr<const MetricGraph> base, Family family) {
  return ConedSpace(std::move(base), std::move(family));
}

HalfUnits angular_distance(const ConedSpace& cs, std::size_t piece, VertexId y1, VertexId y2) {
  if (piece >= cs.piece_count()) throw DomainError("piece index out of range");
  if (!cs.in_piece(piece, y1) || !cs.in_piece(piece, y2))
    throw DomainError("angular_distance: point not in piece " + std::to_string(piece));
  if (y1 == y2) return 0;
  SearchOptions o;
  o.blocked = cs.cone(piece);
  return cs.graph().distances_from(y1, o)[static_cast<std::size_t>(y2)];
}

PsiTable psi_table(const ConedSpace& cs, const PsiOptions& options) {
  PsiTable table;
  std::vector<std::size_t> scope = options.pieces;
  if (scope.empty())
    for (std::size_t i = 0; i < cs.piece_count(); ++i) scope.push_back(i);
  std::map<int, PsiBucket> buckets;
  std::mt19937_64 rng(options.seed);
  HalfUnits max_diam = 0;
  for (std::size_t i : scope) {
    const Piece& piece = cs.family().at(i);
    if (piece.size() < 2) continue;
    ++table.pieces_scanned;
    std::vector<VertexId> sources = piece;
    if (options.max_sources > 0 && sources.size() > options.max_sources) {
      std::vector<VertexId> pick;
      std::sample(sources.begin(), sources.end(), std::back_inserter(pick),
                  static_cast<std::ptrdiff_t>(options.max_sources), rng);
      sources = std::move(pick);
      table.sampled = true;
    }
    for (VertexId y1 : sources) {
      ++table.sources_scanned;
      const auto base_row = cs.base().distances_from(y1);
      HalfUnits reach = 0;
      for (VertexId y2 : piece)
        if (is_finite(base_row[static_cast<std::size_t>(y2)]))
          reach = std::max(reach, base_row[static_cast<std::size_t>(y2)]);
      max_diam = std::max(max_diam, reach);
      // Angular distance never exceeds the base distance, so the search can stop there.
      SearchOptions o;
      o.blocked = cs.cone(i);
      o.cutoff = reach;
      const auto ang = cs.graph().distances_from(y1, o);
      for (VertexId y2 : piece) {
        if (y2 == y1) continue;
        const HalfUnits db = base_row[static_cast<std::size_t>(y2)];
        if (!is_finite(db)) continue;
        const int r = db / 2;
        const HalfUnits a = ang[static_cast<std::size_t>(y2)];
        const Dyadic value = is_finite(a) ? Dyadic::from_halves(a) : Dyadic::infinity();
        auto [it, inserted] = buckets.emplace(r, PsiBucket{r, value, value, 0});
        if (!inserted && value < it->second.raw) it->second.raw = value;
        ++it->second.pairs;
      }
    }
  }
  Dyadic running = Dyadic::infinity();
  for (auto it = buckets.rbegin(); it != buckets.rend(); ++it) {
    running = min(running, it->second.raw);
    it->second.envelope = running;
  }
  for (auto& [r, b] : buckets) table.buckets.push_back(b);
  table.max_piece_diameter = Dyadic::from_halves(max_diam);
  return table;
}

}  // namespace gglab
