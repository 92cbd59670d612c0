#include "gglab/metric/local_search.hpp"

#include <queue>

namespace gglab {

LocalSearch::LocalSearch(const MetricGraph& g)
    : g_(&g), dist_(g.size(), kInfiniteHalves), settled_(g.size(), false) {}

void LocalSearch::reset() {
  for (VertexId v : touched_) {
    dist_[static_cast<std::size_t>(v)] = kInfiniteHalves;
    settled_[static_cast<std::size_t>(v)] = false;
  }
  touched_.clear();
  out_.clear();
}

HalfUnits LocalSearch::distance(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return settled_[i] ? dist_[i] : kInfiniteHalves;
}

const std::vector<std::pair<VertexId, HalfUnits>>& LocalSearch::run(
    std::span<const VertexId> sources, HalfUnits cutoff, const std::function<bool(VertexId, HalfUnits)>& visit) {
  reset();
  using Item = std::pair<HalfUnits, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (VertexId s : sources) {
    const auto i = static_cast<std::size_t>(s);
    if (dist_[i] == 0) continue;
    if (!is_finite(dist_[i])) touched_.push_back(s);
    dist_[i] = 0;
    heap.emplace(0, s);
  }
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    const auto vi = static_cast<std::size_t>(v);
    if (settled_[vi] || d != dist_[vi]) continue;
    settled_[vi] = true;
    out_.emplace_back(v, d);
    if (visit && !visit(v, d)) break;
    for (const Arc& a : g_->neighbors(v)) {
      const auto ti = static_cast<std::size_t>(a.to);
      const HalfUnits nd = d + a.length;
      if (nd > cutoff || settled_[ti] || nd >= dist_[ti]) continue;
      if (!is_finite(dist_[ti])) touched_.push_back(a.to);
      dist_[ti] = nd;
      heap.emplace(nd, a.to);
    }
  }
  return out_;
}

}  // namespace gglab
