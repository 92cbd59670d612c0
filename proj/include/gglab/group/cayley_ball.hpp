#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gglab/group/word_problem.hpp"
#include "gglab/metric/metric_graph.hpp"

namespace gglab {

/// Vertex budget from GGLAB_BUDGET, default 200000.
std::size_t default_vertex_budget();

struct BallOptions {
  std::size_t vertex_budget = default_vertex_budget();
  /// Quadruple budget for the delta measurement behind the Dehn safe radius.
  std::uint64_t delta_quadruple_budget = 2'000'000'000ULL;
  /// Pair budget for certifying partially commutative distances.
  std::size_t certification_pair_budget = 4'000'000;
};

/// Directed generator edge: to = from * generator.
struct BallEdge {
  VertexId from;
  VertexId to;
  Letter generator;
};

/// Radius-R ball of a Cayley graph. Vertex ids follow shortlex order of the
/// normal forms, so the identity is vertex 0 and lower ids are shortlex-smaller.
class CayleyBall {
 public:
  int radius = 0;
  std::vector<Word> vertices;
  std::vector<int> level;  // word length of each vertex
  std::vector<BallEdge> edges;
  int safe_radius = 0;
  std::string safe_radius_note;
  /// Unit-edge graph of the ball (edge length 2 half units).
  MetricGraph graph;

  const Presentation& presentation() const { return problem_->presentation(); }
  const Alphabet& alphabet() const { return problem_->alphabet(); }
  const WordProblem& word_problem() const { return *problem_; }

  std::size_t size() const { return vertices.size(); }
  VertexId neighbor(VertexId v, Letter l) const {
    return next_[static_cast<std::size_t>(v) * alphabet().size() + l];
  }
  /// Vertex reached by reading `w` from `from`; kNoVertex if the path leaves the ball.
  VertexId walk(VertexId from, const Word& w) const;
  /// Vertex representing the element `w`, or kNoVertex if it lies outside.
  VertexId find(const Word& w) const;
  std::string name(VertexId v) const;
  /// Number of vertices with level <= r (a prefix of the id range).
  std::size_t count_within(int r) const;
  bool in_safe_ball(VertexId v) const { return level[static_cast<std::size_t>(v)] <= safe_radius; }
  /// Integer word distance.
  int dist(VertexId u, VertexId v) const;

 private:
  friend CayleyBall build_ball(const Presentation&, int, const BallOptions&);
  std::shared_ptr<const WordProblem> problem_;
  std::vector<VertexId> next_;
};

CayleyBall build_ball(const Presentation& p, int radius, const BallOptions& options = {});

/// Name used for a vertex in artifacts: the normal form, or "1" for the identity.
std::string element_name(const Alphabet& alphabet, const Word& w);

}  // namespace gglab
