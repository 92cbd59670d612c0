#include "gglab/group/cayley_ball.hpp"

#include <cstdlib>
#include <map>
#include <unordered_map>

#include "gglab/errors.hpp"
#include "gglab/metric/delta.hpp"

namespace gglab {

std::size_t default_vertex_budget() {
  if (const char* env = std::getenv("GGLAB_BUDGET")) {
    const long long v = std::strtoll(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 200'000;
}

std::string element_name(const Alphabet& alphabet, const Word& w) {
  return w.empty() ? std::string("1") : alphabet.format(w);
}

VertexId CayleyBall::walk(VertexId from, const Word& w) const {
  VertexId cur = from;
  for (Letter l : w.letters) {
    if (cur == kNoVertex) return kNoVertex;
    cur = neighbor(cur, l);
  }
  return cur;
}

VertexId CayleyBall::find(const Word& w) const {
  const VertexId direct = walk(0, w);
  if (direct != kNoVertex || !problem_->has_normal_forms()) return direct;
  return walk(0, problem_->reduce(w));
}

std::string CayleyBall::name(VertexId v) const {
  return element_name(alphabet(), vertices.at(static_cast<std::size_t>(v)));
}

std::size_t CayleyBall::count_within(int r) const {
  std::size_t n = 0;
  while (n < level.size() && level[n] <= r) ++n;
  return n;
}

int CayleyBall::dist(VertexId u, VertexId v) const {
  const HalfUnits h = graph.distance(u, v);
  return is_finite(h) ? h / 2 : -1;
}

namespace {

std::string key_of(const Word& w) { return std::string(w.letters.begin(), w.letters.end()); }

/// Exponent-sum vector when every relator has zero exponent sum; otherwise a
/// constant key. Equal elements always share a key.
class AbelianKey {
 public:
  explicit AbelianKey(const Presentation& p) : alphabet_(p.alphabet) {
    enabled_ = true;
    for (const Word& r : p.relators) {
      std::vector<int> sums(alphabet_.rank(), 0);
      for (Letter l : r.letters) sums[alphabet_.generator_of(l)] += alphabet_.is_positive(l) ? 1 : -1;
      for (int s : sums) enabled_ = enabled_ && s == 0;
    }
  }
  std::vector<int> operator()(const Word& w) const {
    std::vector<int> sums(enabled_ ? alphabet_.rank() : 0, 0);
    if (enabled_)
      for (Letter l : w.letters) sums[alphabet_.generator_of(l)] += alphabet_.is_positive(l) ? 1 : -1;
    return sums;
  }

 private:
  Alphabet alphabet_;
  bool enabled_;
};

void certify_partially_commutative(CayleyBall& ball, const BallOptions& options) {
  const WordProblem& wp = ball.word_problem();
  const Alphabet& A = ball.alphabet();
  std::size_t pairs = 0;
  for (int r = 0; r <= ball.radius; ++r) {
    const std::size_t lo = ball.count_within(r - 1);
    const std::size_t hi = ball.count_within(r);
    pairs += (hi - lo) * hi;
    if (pairs > options.certification_pair_budget) {
      ball.safe_radius = r - 1;
      ball.safe_radius_note = "distance certification stopped at the pair budget";
      return;
    }
    for (std::size_t u = lo; u < hi; ++u) {
      const auto row = ball.graph.distances_from(static_cast<VertexId>(u));
      const Word u_inv = inverse(ball.vertices[u], A);
      for (std::size_t v = 0; v < hi; ++v) {
        const auto exact = wp.reduce(multiply(u_inv, ball.vertices[v], A)).size();
        if (row[v] != static_cast<HalfUnits>(2 * exact)) {
          ball.safe_radius = r - 1;
          ball.safe_radius_note = "ball distance differs from word length between " + ball.name(static_cast<VertexId>(u)) +
                                  " and " + ball.name(static_cast<VertexId>(v));
          return;
        }
      }
    }
  }
  ball.safe_radius = ball.radius;
  ball.safe_radius_note = "ball distances certified equal to normal-form lengths";
}

void dehn_safe_radius(CayleyBall& ball, const BallOptions& options) {
  DeltaOptions d;
  d.mode = DeltaMode::Exact;
  d.quadruple_budget = options.delta_quadruple_budget;
  try {
    const DeltaReport rep = delta_hyperbolicity(ball.graph, d);
    const Dyadic room = Dyadic(ball.radius) - Dyadic(4) * rep.delta4;
    const double half = room.to_double() / 2.0;
    ball.safe_radius = half <= 0 ? 0 : static_cast<int>(half);
    ball.safe_radius_note = "floor((R - 4 delta4)/2) with delta4 = " + rep.delta4.to_string();
  } catch (const ResourceError& e) {
    ball.safe_radius = 0;
    ball.safe_radius_note = std::string("delta4 not measured exactly (") + e.what() + "); safe radius 0";
  }
}

}  // namespace

CayleyBall build_ball(const Presentation& p, int radius, const BallOptions& options) {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  CayleyBall ball;
  ball.radius = radius;
  ball.problem_ = std::make_shared<const WordProblem>(p);
  const WordProblem& wp = *ball.problem_;
  const Alphabet& A = p.alphabet;
  const std::size_t k = A.size();
  const bool canonical = wp.has_normal_forms();
  const AbelianKey abelian(p);

  std::unordered_map<std::string, VertexId> index;
  std::map<std::vector<int>, std::vector<VertexId>> buckets;
  auto add_vertex = [&](Word w, int lvl) {
    if (ball.vertices.size() >= options.vertex_budget)
      throw ResourceError("vertex", options.vertex_budget,
                          "ball of radius " + std::to_string(radius) + " (set GGLAB_BUDGET to raise)");
    const auto id = static_cast<VertexId>(ball.vertices.size());
    if (canonical) {
      index.emplace(key_of(w), id);
    } else {
      buckets[abelian(w)].push_back(id);
    }
    ball.vertices.push_back(std::move(w));
    ball.level.push_back(lvl);
    ball.next_.resize(ball.vertices.size() * k, kNoVertex);
    return id;
  };
  auto lookup = [&](const Word& c, int lvl) -> VertexId {
    if (canonical) {
      auto it = index.find(key_of(wp.reduce(c)));
      return it == index.end() ? kNoVertex : it->second;
    }
    auto it = buckets.find(abelian(c));
    if (it == buckets.end()) return kNoVertex;
    for (VertexId u : it->second) {
      if (ball.level[static_cast<std::size_t>(u)] < lvl - 2) continue;
      if (wp.equal(ball.vertices[static_cast<std::size_t>(u)], c)) return u;
    }
    return kNoVertex;
  };

  add_vertex(Word{}, 0);
  std::size_t level_begin = 0;
  for (int lvl = 0; lvl <= radius; ++lvl) {
    const std::size_t level_end = ball.vertices.size();
    for (std::size_t v = level_begin; v < level_end; ++v) {
      for (Letter s = 0; s < k; ++s) {
        if (ball.next_[v * k + s] != kNoVertex) continue;
        const Word c = multiply(ball.vertices[v], Word({s}), A);
        VertexId t = lookup(c, lvl + 1);
        if (t == kNoVertex) {
          if (lvl == radius) continue;
          t = add_vertex(c, lvl + 1);
        }
        ball.next_[v * k + s] = t;
        ball.next_[static_cast<std::size_t>(t) * k + A.inverse(s)] = static_cast<VertexId>(v);
        if (A.is_positive(s)) {
          ball.edges.push_back({static_cast<VertexId>(v), t, s});
        } else {
          ball.edges.push_back({t, static_cast<VertexId>(v), A.inverse(s)});
        }
      }
    }
    level_begin = level_end;
  }

  ball.graph = MetricGraph(ball.vertices.size());
  for (std::size_t v = 0; v < ball.vertices.size(); ++v)
    ball.graph.set_name(static_cast<VertexId>(v), ball.name(static_cast<VertexId>(v)));
  for (const BallEdge& e : ball.edges) ball.graph.add_edge(e.from, e.to, 2);
  ball.graph.set_point_count(ball.vertices.size());

  switch (p.strategy) {
    case Strategy::FreeGroup:
      ball.safe_radius = radius;
      ball.safe_radius_note = "tree: geodesics are unique and stay in the ball";
      break;
    case Strategy::DehnSmallCancellation:
      dehn_safe_radius(ball, options);
      break;
    case Strategy::PartiallyCommutative:
      certify_partially_commutative(ball, options);
      break;
  }
  return ball;
}

}  // namespace gglab
