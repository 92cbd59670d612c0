#include "gglab/metric/metric_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <queue>
#include <unordered_map>

#include "gglab/errors.hpp"

namespace gglab {

namespace {

std::size_t default_cache_budget() {
  if (const char* env = std::getenv("GGLAB_CACHE_MB")) {
    const long mb = std::strtol(env, nullptr, 10);
    if (mb > 0) return static_cast<std::size_t>(mb) << 20;
  }
  return std::size_t{1536} << 20;
}

}  // namespace

struct MetricGraph::Cache {
  std::mutex mutex;
  std::unordered_map<VertexId, DistanceRow> rows;
  std::deque<VertexId> order;
  std::size_t bytes = 0;
  std::size_t budget = default_cache_budget();

  void clear() {
    rows.clear();
    order.clear();
    bytes = 0;
  }
};

MetricGraph::MetricGraph() : cache_(std::make_unique<Cache>()) {}

MetricGraph::MetricGraph(std::size_t vertex_count) : MetricGraph() {
  names_.resize(vertex_count);
}

MetricGraph::MetricGraph(const MetricGraph& other)
    : meta(other.meta),
      names_(other.names_),
      edges_(other.edges_),
      point_count_(other.point_count_),
      point_count_set_(other.point_count_set_),
      cache_(std::make_unique<Cache>()) {
  cache_->budget = other.cache_->budget;
}

MetricGraph& MetricGraph::operator=(const MetricGraph& other) {
  if (this != &other) {
    MetricGraph copy(other);
    *this = std::move(copy);
  }
  return *this;
}

MetricGraph::MetricGraph(MetricGraph&&) noexcept = default;
MetricGraph& MetricGraph::operator=(MetricGraph&&) noexcept = default;
MetricGraph::~MetricGraph() = default;

VertexId MetricGraph::add_vertex(std::string name) {
  names_.push_back(std::move(name));
  invalidate();
  return static_cast<VertexId>(names_.size() - 1);
}

void MetricGraph::check_vertex(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= names_.size())
    throw DomainError("vertex " + std::to_string(v) + " outside graph of size " +
                      std::to_string(names_.size()));
}

void MetricGraph::add_edge(VertexId u, VertexId v, HalfUnits length) {
  check_vertex(u);
  check_vertex(v);
  if (length < 0 || !is_finite(length)) throw InputError("edge length must be finite and nonnegative");
  edges_.push_back({u, v, length});
  invalidate();
}

void MetricGraph::set_point_count(std::size_t n) {
  if (n > names_.size()) throw DomainError("point count exceeds vertex count");
  point_count_ = n;
  point_count_set_ = true;
}

void MetricGraph::invalidate() {
  adjacency_ready_ = false;
  if (!point_count_set_) point_count_ = names_.size();
  if (cache_) {
    std::lock_guard lock(cache_->mutex);
    cache_->clear();
  }
}

void MetricGraph::set_cache_budget(std::size_t bytes) {
  std::lock_guard lock(cache_->mutex);
  cache_->budget = bytes;
}

void MetricGraph::ensure_adjacency() const {
  if (adjacency_ready_) return;
  const std::size_t n = names_.size();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[static_cast<std::size_t>(e.u) + 1];
    if (e.u != e.v) ++offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  arcs_.assign(offsets_[n], Arc{0, 0});
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  max_length_ = 0;
  uniform_ = true;
  for (const Edge& e : edges_) {
    arcs_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, e.length};
    if (e.u != e.v) arcs_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, e.length};
    if (!edges_.empty() && e.length != edges_.front().length) uniform_ = false;
    max_length_ = std::max(max_length_, e.length);
  }
  // Neighbor lists sorted by index so searches are order-independent of input.
  for (std::size_t i = 0; i < n; ++i)
    std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Arc& a, const Arc& b) { return a.to != b.to ? a.to < b.to : a.length < b.length; });
  if (uniform_ && !edges_.empty() && edges_.front().length == 0) uniform_ = false;
  adjacency_ready_ = true;
}

std::span<const Arc> MetricGraph::neighbors(VertexId v) const {
  check_vertex(v);
  ensure_adjacency();
  const auto i = static_cast<std::size_t>(v);
  return {arcs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::vector<HalfUnits> MetricGraph::distances_from(VertexId source, const SearchOptions& options) const {
  const VertexId s[1] = {source};
  return distances_from(std::span<const VertexId>(s, 1), options);
}

std::vector<HalfUnits> MetricGraph::distances_from(std::span<const VertexId> sources,
                                                   const SearchOptions& options) const {
  ensure_adjacency();
  const std::size_t n = names_.size();
  std::vector<HalfUnits> dist(n, kInfiniteHalves);
  const auto allowed = [&](VertexId v) { return v != options.blocked; };

  if (uniform_) {
    const HalfUnits step = edges_.empty() ? 2 : edges_.front().length;
    std::vector<VertexId> frontier;
    for (VertexId s : sources) {
      check_vertex(s);
      if (allowed(s) && dist[static_cast<std::size_t>(s)] != 0) {
        dist[static_cast<std::size_t>(s)] = 0;
        frontier.push_back(s);
      }
    }
    std::vector<VertexId> next;
    HalfUnits level = 0;
    while (!frontier.empty()) {
      if (level + step > options.cutoff) break;
      level += step;
      next.clear();
      for (VertexId u : frontier) {
        const auto i = static_cast<std::size_t>(u);
        for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
          const VertexId w = arcs_[k].to;
          if (dist[static_cast<std::size_t>(w)] == kInfiniteHalves && allowed(w)) {
            dist[static_cast<std::size_t>(w)] = level;
            next.push_back(w);
          }
        }
      }
      frontier.swap(next);
    }
    return dist;
  }

  if (max_length_ <= 64) {
    // Dial's bucket queue over a circular array.
    const std::size_t width = static_cast<std::size_t>(max_length_) + 1;
    std::vector<std::vector<VertexId>> buckets(width);
    std::size_t pending = 0;
    for (VertexId s : sources) {
      check_vertex(s);
      if (allowed(s) && dist[static_cast<std::size_t>(s)] != 0) {
        dist[static_cast<std::size_t>(s)] = 0;
        buckets[0].push_back(s);
        ++pending;
      }
    }
    for (HalfUnits current = 0; pending > 0; ++current) {
      auto& bucket = buckets[static_cast<std::size_t>(current) % width];
      for (std::size_t b = 0; b < bucket.size(); ++b) {
        const VertexId u = bucket[b];
        --pending;
        if (dist[static_cast<std::size_t>(u)] != current) continue;
        const auto i = static_cast<std::size_t>(u);
        for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
          const VertexId w = arcs_[k].to;
          const HalfUnits nd = current + arcs_[k].length;
          if (nd > options.cutoff || !allowed(w)) continue;
          if (nd < dist[static_cast<std::size_t>(w)]) {
            dist[static_cast<std::size_t>(w)] = nd;
            buckets[static_cast<std::size_t>(nd) % width].push_back(w);
            ++pending;
          }
        }
      }
      bucket.clear();
    }
    return dist;
  }

  using Item = std::pair<HalfUnits, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (VertexId s : sources) {
    check_vertex(s);
    if (allowed(s)) {
      dist[static_cast<std::size_t>(s)] = 0;
      heap.push({0, s});
    }
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[static_cast<std::size_t>(u)]) continue;
    const auto i = static_cast<std::size_t>(u);
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const VertexId w = arcs_[k].to;
      const HalfUnits nd = d + arcs_[k].length;
      if (nd > options.cutoff || !allowed(w)) continue;
      if (nd < dist[static_cast<std::size_t>(w)]) {
        dist[static_cast<std::size_t>(w)] = nd;
        heap.push({nd, w});
      }
    }
  }
  return dist;
}

DistanceRow MetricGraph::row(VertexId source) const {
  check_vertex(source);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->rows.find(source); it != cache_->rows.end()) return it->second;
  }
  auto computed = std::make_shared<const std::vector<HalfUnits>>(distances_from(source));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->rows.emplace(source, computed);
  if (!inserted) return it->second;
  const std::size_t row_bytes = computed->size() * sizeof(HalfUnits) + 64;
  cache_->order.push_back(source);
  cache_->bytes += row_bytes;
  while (cache_->bytes > cache_->budget && cache_->order.size() > 1) {
    const VertexId victim = cache_->order.front();
    cache_->order.pop_front();
    cache_->rows.erase(victim);
    cache_->bytes -= row_bytes;
  }
  return computed;
}

HalfUnits MetricGraph::distance(VertexId u, VertexId v) const {
  check_vertex(v);
  return (*row(u))[static_cast<std::size_t>(v)];
}

std::vector<VertexId> MetricGraph::components() const {
  ensure_adjacency();
  const std::size_t n = names_.size();
  std::vector<VertexId> label(n, kNoVertex);
  VertexId next = 0;
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != kNoVertex) continue;
    label[s] = next;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      const auto u = static_cast<std::size_t>(stack.back());
      stack.pop_back();
      for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
        const auto w = static_cast<std::size_t>(arcs_[k].to);
        if (label[w] == kNoVertex) {
          label[w] = next;
          stack.push_back(static_cast<VertexId>(w));
        }
      }
    }
    ++next;
  }
  return label;
}

bool MetricGraph::connected() const {
  const auto label = components();
  return std::all_of(label.begin(), label.end(), [](VertexId l) { return l == 0; });
}

HalfUnits path_length(const MetricGraph& g, std::span<const VertexId> path) {
  HalfUnits total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    HalfUnits best = kInfiniteHalves;
    for (const Arc& a : g.neighbors(path[i - 1]))
      if (a.to == path[i]) best = std::min(best, a.length);
    if (!is_finite(best))
      throw DomainError("path step " + std::to_string(path[i - 1]) + "->" + std::to_string(path[i]) +
                        " is not an edge");
    total += best;
  }
  return total;
}

std::vector<VertexId> least_geodesic(const MetricGraph& g, VertexId u, VertexId v,
                                     const SearchOptions& options) {
  const auto to_v = g.distances_from(v, options);
  if (!is_finite(to_v.at(static_cast<std::size_t>(u))))
    throw DomainError("vertices " + std::to_string(u) + " and " + std::to_string(v) + " are disconnected");
  std::vector<VertexId> path{u};
  VertexId cur = u;
  while (cur != v) {
    const HalfUnits here = to_v[static_cast<std::size_t>(cur)];
    VertexId step = kNoVertex;
    for (const Arc& a : g.neighbors(cur)) {
      if (a.to == options.blocked) continue;
      const HalfUnits there = to_v[static_cast<std::size_t>(a.to)];
      if (is_finite(there) && there + a.length == here && (a.length > 0 || there < here || a.to == v)) {
        step = a.to;
        break;  // arcs are sorted by index
      }
    }
    if (step == kNoVertex) throw DomainError("no geodesic continuation found");
    path.push_back(step);
    cur = step;
  }
  return path;
}

}  // namespace gglab
