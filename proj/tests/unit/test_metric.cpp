#include <doctest.h>

#include <numeric>
#include <random>

#include "gglab/errors.hpp"
#include "gglab/metric/delta.hpp"
#include "gglab/metric/geodesics.hpp"
#include "gglab/metric/local_search.hpp"
#include "../support/fixtures.hpp"

using namespace gglab;

namespace {

MetricGraph cycle(std::size_t n) {
  MetricGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n), 2);
  return g;
}

VertexId at(const CayleyBall& b, const std::string& w) { return b.find(b.alphabet().parse(w)); }

std::vector<VertexId> sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Vertices on the unique tree geodesic between two free-group words.
std::vector<VertexId> tree_path(const CayleyBall& b, const std::string& x, const std::string& y) {
  std::size_t p = 0;
  while (p < x.size() && p < y.size() && x[p] == y[p]) ++p;
  std::vector<VertexId> out;
  for (std::size_t k = p; k <= x.size(); ++k) out.push_back(at(b, x.substr(0, k)));
  for (std::size_t k = p + 1; k <= y.size(); ++k) out.push_back(at(b, y.substr(0, k)));
  return out;
}

std::string word(const CayleyBall& b, VertexId v) { return b.name(v) == "1" ? "" : b.name(v); }

}  // namespace

TEST_SUITE("metric-graph") {

TEST_CASE("gromov products on the free group tree") {
  const auto b = fx::ball(fx::f2(), 3);
  CHECK(gromov_product(b->graph, at(*b, "aa"), at(*b, "A"), 0) == Dyadic(0));
  CHECK(gromov_product(b->graph, 5, 5, 5) == Dyadic(0));
  // d(ab, e) = 2, d(aB, e) = 2, d(ab, aB) = 2 on the tree.
  CHECK(gromov_product(b->graph, at(*b, "ab"), at(*b, "aB"), 0) == Dyadic(1));
}

TEST_CASE("gromov product across components is a domain error") {
  MetricGraph g(3);
  g.add_edge(0, 1, 2);
  CHECK_THROWS_AS(gromov_product(g, 0, 1, 2), DomainError);
}

TEST_CASE("four-point constant of trees, cycles and a point") {
  const auto b = fx::ball(fx::f2(), 4);
  CHECK(delta_hyperbolicity(b->graph).delta4 == Dyadic(0));
  MetricGraph single(1);
  CHECK(delta_hyperbolicity(single).delta4 == Dyadic(0));
  const MetricGraph c6 = cycle(6);
  const DeltaReport r = delta_hyperbolicity(c6);
  CHECK(r.delta4 == Dyadic::fraction(oracle::brute_delta4(oracle::floyd(c6)), 2));
  CHECK(r.delta4 == Dyadic(1));
}

TEST_CASE("exact four-point constant matches a brute-force scan") {
  const auto b = fx::ball(fx::presentation("genus2.txt"), 2);
  const DeltaReport r = delta_hyperbolicity(b->graph);
  CHECK(r.exact);
  CHECK(r.delta4 == Dyadic::fraction(oracle::brute_delta4(oracle::floyd(b->graph)), 2));
  CHECK(four_point_value(b->graph, r.witness) == r.delta4);
}

TEST_CASE("sampled four-point constant is a lower bound") {
  const auto b = fx::ball(fx::presentation("genus2.txt"), 2);
  const Dyadic exact = delta_hyperbolicity(b->graph).delta4;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    DeltaOptions o{DeltaMode::Sampled};
    o.sample_vertices = 16;
    o.seed = seed;
    const DeltaReport s = delta_hyperbolicity(b->graph, o);
    CHECK_FALSE(s.exact);
    CHECK(s.delta4 <= exact);
  }
}

TEST_CASE("four-point constant is invariant under relabeling") {
  const MetricGraph c = cycle(9);
  std::vector<VertexId> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937(2));
  MetricGraph g(9);
  for (const auto& e : c.edges()) g.add_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)], e.length);
  CHECK(delta_hyperbolicity(g).delta4 == delta_hyperbolicity(c).delta4);
}

TEST_CASE("exact mode over budget raises a resource error") {
  DeltaOptions o{DeltaMode::Exact};
  o.quadruple_budget = 10;
  CHECK_THROWS_AS(delta_hyperbolicity(cycle(12), o), ResourceError);
  o.mode = DeltaMode::Auto;
  CHECK_FALSE(delta_hyperbolicity(cycle(12), o).exact);
}

TEST_CASE("geodesic intervals") {
  const auto b = fx::ball(fx::f2(), 3);
  CHECK(geodesic_interval(b->graph, at(*b, "aa"), 0).interval == sorted({0, at(*b, "a"), at(*b, "aa")}));
  CHECK(geodesic_interval(b->graph, 4, 4).interval == std::vector<VertexId>{4});
  const MetricGraph c4 = cycle(4);
  CHECK(geodesic_interval(c4, 0, 2).interval == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("geodesic intervals are symmetric and contain least geodesics") {
  const auto b = fx::ball(fx::presentation("genus2.txt"), 3);
  std::mt19937 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto u = static_cast<VertexId>(rng() % b->size());
    const auto v = static_cast<VertexId>(rng() % b->size());
    const auto I = geodesic_interval(b->graph, u, v).interval;
    CHECK(I == geodesic_interval(b->graph, v, u).interval);
    for (VertexId w : least_geodesic(b->graph, u, v)) CHECK(std::binary_search(I.begin(), I.end(), w));
  }
}

TEST_CASE("nearest point projections onto the a-axis") {
  const auto b = fx::ball(fx::f2(), 5);
  const auto A = fx::axis(*b, 'a');
  CHECK(nearest_point_projection(b->graph, A, at(*b, "b")) == std::vector<VertexId>{0});
  CHECK(nearest_point_projection(b->graph, A, at(*b, "baaa")) == std::vector<VertexId>{0});
  CHECK(nearest_point_projection(b->graph, A, at(*b, "aa")) == std::vector<VertexId>{at(*b, "aa")});
  CHECK_THROWS_AS(nearest_point_projection(b->graph, std::vector<VertexId>{}, 0), DomainError);
}

TEST_CASE("projection distance realizes the minimum over the set") {
  const auto b = fx::ball(fx::presentation("genus2.txt"), 3);
  const std::vector<VertexId> B{3, 17, 40, 99, 120};
  for (VertexId x = 0; x < 60; ++x) {
    const auto P = nearest_point_projection(b->graph, B, x);
    HalfUnits best = kInfiniteHalves;
    for (VertexId y : B) best = std::min(best, b->graph.distance(x, y));
    for (VertexId p : P) CHECK(b->graph.distance(x, p) == best);
    for (VertexId y : B)
      if (b->graph.distance(x, y) == best) CHECK(std::find(P.begin(), P.end(), y) != P.end());
  }
}

TEST_CASE("quasiconvexity constants of convex sets are zero") {
  const auto b = fx::ball(fx::f2(), 5);
  const auto A = fx::axis(*b, 'a');
  CHECK(quasiconvexity_constant(b->graph, A, all_pairs(A)).constant == Dyadic(0));
  std::vector<VertexId> all(b->size());
  std::iota(all.begin(), all.end(), 0);
  const std::vector<VertexId> some(all.begin(), all.begin() + 40);
  CHECK(quasiconvexity_constant(b->graph, all, all_pairs(some)).constant == Dyadic(0));
}

TEST_CASE("quasiconvexity of the a2b2 orbit matches an all-pairs tree scan") {
  const gglab::Presentation f2 = fx::f2();
  const auto b = fx::ball(f2, 8);
  const auto Q = fx::cosets(f2, *b, "a2b2.sub").pieces.front();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : b->edges) edges.emplace_back(e.from, e.to);
  std::vector<int> toQ(b->size(), 1 << 30);
  for (VertexId q : Q) {
    const auto d = oracle::bfs(b->size(), edges, q);
    for (std::size_t v = 0; v < d.size(); ++v) toQ[v] = std::min(toQ[v], d[v]);
  }
  int expected = 0;
  for (VertexId x : Q)
    for (VertexId y : Q)
      for (VertexId w : tree_path(*b, word(*b, x), word(*b, y))) expected = std::max(expected, toQ[static_cast<std::size_t>(w)]);
  const auto r = quasiconvexity_constant(b->graph, Q, all_pairs(Q));
  CHECK(r.constant == Dyadic(expected));
  CHECK(expected == 2);
}

TEST_CASE("enlarging the pair domain never decreases the constant") {
  const gglab::Presentation f2 = fx::f2();
  const auto b = fx::ball(f2, 8);
  const auto Q = fx::cosets(f2, *b, "kernel2.sub").pieces.front();
  std::vector<VertexPair> pairs;
  Dyadic last;
  std::mt19937 rng(9);
  for (int t = 0; t < 60; ++t) {
    pairs.emplace_back(Q[rng() % Q.size()], Q[rng() % Q.size()]);
    const Dyadic c = quasiconvexity_constant(b->graph, Q, pairs).constant;
    CHECK(c >= last);
    last = c;
  }
}

TEST_CASE("intersections of thickened convex sets stay convex in the tree") {
  const auto b = fx::ball(fx::f2(), 6);
  const auto thick = [&](char letter, VertexId shift) {
    auto axis = fx::axis(*b, letter);
    for (VertexId& v : axis) v = b->walk(shift, b->vertices[static_cast<std::size_t>(v)]);
    axis.erase(std::remove(axis.begin(), axis.end(), kNoVertex), axis.end());
    const auto d = distance_to_set(b->graph, axis);
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < d.size(); ++v)
      if (d[v] <= 4) out.push_back(static_cast<VertexId>(v));
    return out;
  };
  const auto X = thick('a', 0);
  const auto Y = thick('b', at(*b, "a"));
  std::vector<VertexId> J;
  std::set_intersection(X.begin(), X.end(), Y.begin(), Y.end(), std::back_inserter(J));
  REQUIRE(J.size() > 2);
  const Dyadic delta = delta_hyperbolicity(b->graph).delta4;
  CHECK(quasiconvexity_constant(b->graph, J, all_pairs(J)).constant <= Dyadic(4) * delta);
}

TEST_CASE("coarse path metrics on axis subsets") {
  const auto b = fx::ball(fx::f2(), 6);
  const auto A = fx::axis(*b, 'a');
  const SubsetMetric m = coarse_path_metric(b->graph, A, Dyadic(1));
  const SubsetMetric r = restricted_metric(b->graph, A);
  CHECK(m.dist == r.dist);
  const SubsetMetric one = coarse_path_metric(b->graph, std::vector<VertexId>{7}, Dyadic(1));
  CHECK(one.dist == std::vector<HalfUnits>{0});
  std::vector<VertexId> even;
  for (VertexId v : A)
    if (b->level[static_cast<std::size_t>(v)] % 2 == 0) even.push_back(v);
  CHECK(coarse_path_metric(b->graph, even, Dyadic(2)).dist == restricted_metric(b->graph, even).dist);
  const SubsetMetric sparse = coarse_path_metric(b->graph, even, Dyadic(1));
  for (std::size_t i = 0; i < even.size(); ++i)
    for (std::size_t j = 0; j < even.size(); ++j) CHECK((i == j) == is_finite(sparse.at(i, j)));
}

TEST_CASE("undistortion of axes and far-apart pairs") {
  const auto b = fx::ball(fx::f2(), 6);
  const auto A = fx::axis(*b, 'a');
  const auto ok = undistortion_check(b->graph, A, Dyadic(1), Dyadic(4));
  CHECK(ok.ok);
  CHECK(ok.lambda_hat == Dyadic(1));
  const std::vector<VertexId> far{at(*b, "aaa"), at(*b, "BBB")};
  const auto bad = undistortion_check(b->graph, far, Dyadic(1), Dyadic(4));
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.first != kNoVertex);
}

TEST_CASE("undistortion of the a2b2 orbit matches an exhaustive oracle") {
  const gglab::Presentation f2 = fx::f2();
  const auto b = fx::ball(f2, 8);
  const auto Y = fx::cosets(f2, *b, "a2b2.sub").pieces.front();
  const SubsetMetric dy = coarse_path_metric(b->graph, Y, Dyadic(4));
  // Chain the orbit by hand: points within 4 of each other are joined.
  const std::size_t n = Y.size();
  std::vector<std::vector<long>> d(n, std::vector<long>(n));
  std::vector<std::vector<long>> dY(n, std::vector<long>(n, 1L << 40));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = b->dist(Y[i], Y[j]);
      if (d[i][j] <= 4) dY[i][j] = d[i][j];
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dY[i][j] = std::min(dY[i][j], dY[i][k] + dY[k][j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(dy.at(i, j) == 2 * dY[i][j]);
  int q = 4;  // lambda = q / 4
  auto fits = [&](int q) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (16 * d[i][j] - q * q > 4 * q * dY[i][j] || 16 * dY[i][j] > 4 * q * d[i][j] + 4 * q) return false;
    return true;
  };
  while (!fits(q)) ++q;
  const auto r = undistortion_check(b->graph, Y, Dyadic(4), Dyadic(4));
  CHECK(r.lambda_hat == Dyadic::fraction(q, 2));
}

TEST_CASE("bounded local search agrees with full searches") {
  const auto b = fx::ball(fx::presentation("genus2.txt"), 3);
  LocalSearch s(b->graph);
  for (VertexId src : {0, 5, 77}) {
    const auto full = b->graph.distances_from(src);
    const auto& near = s.run(std::span(&src, 1), 4);
    std::size_t within = 0;
    for (HalfUnits d : full) within += d <= 4;
    CHECK(near.size() == within);
    for (const auto& [v, d] : near) CHECK(full[static_cast<std::size_t>(v)] == d);
  }
}

TEST_CASE("distance rows satisfy the metric axioms") {
  const auto b = fx::ball(fx::presentation("amalgam_z2.txt"), 3);
  const auto D = oracle::floyd(b->graph);
  for (std::size_t u = 0; u < b->size(); ++u) {
    const auto row = b->graph.distances_from(static_cast<VertexId>(u));
    CHECK(row[u] == 0);
    for (std::size_t v = 0; v < b->size(); ++v) CHECK(row[v] == D[u][v]);
  }
}

}  // TEST_SUITE
