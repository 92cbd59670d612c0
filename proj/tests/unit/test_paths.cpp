#include <doctest.h>

#include <random>

#include "gglab/errors.hpp"
#include "gglab/metric/geodesics.hpp"
#include "gglab/paths/electric_path.hpp"
#include "gglab/paths/meetings.hpp"
#include "../support/fixtures.hpp"

using namespace gglab;

namespace {

VertexId at(const CayleyBall& b, const std::string& w) { return b.find(b.alphabet().parse(w)); }

struct PathFixture {
  Presentation p = fx::f2();
  std::shared_ptr<const CayleyBall> ball;
  CosetFamily family;
  ConedSpace cs;
  PathFixture(int R, const std::string& sub)
      : ball(fx::ball(p, R)),
        family(fx::cosets(p, *ball, sub)),
        cs(electrify(std::shared_ptr<const MetricGraph>(ball, &ball->graph), family.pieces)) {}
};

struct SuiteStats {
  double lambda = 0;
  Dyadic travel, entry, exit;
};

/// Electro-ambient statistics over 100 seeded endpoint pairs.
SuiteStats electro_ambient_stats(const PathFixture& f) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(f.ball->size()) - 1);
  SuiteStats s;
  for (int t = 0; t < 100; ++t) {
    const VertexId u = any(rng), v = any(rng);
    const ElectricPath e = electric_geodesic(f.cs, u, v);
    const AmbientPath amb = deelectrify(e, f.cs);
    const auto q = quasigeodesic_constants(amb.vertices, f.ball->graph);
    CHECK(q.mu == Dyadic(2));
    s.lambda = std::max(s.lambda, q.lambda);
    const auto pen = penetration_diagnostics(e, least_geodesic(f.ball->graph, u, v), f.cs, Dyadic::fraction(1, 2));
    s.travel = max(s.travel, pen.max_travel);
    s.entry = max(s.entry, pen.max_entry_offset);
    s.exit = max(s.exit, pen.max_exit_offset);
  }
  return s;
}

}  // namespace

TEST_SUITE("paths") {

TEST_CASE("electric geodesics through the a-cone") {
  const PathFixture f(6, "a.sub");
  const ElectricPath e = electric_geodesic(f.cs, at(*f.ball, "aaaaa"), 0);
  REQUIRE(e.vertices.size() == 3);
  CHECK(e.vertices.front() == at(*f.ball, "aaaaa"));
  CHECK(e.vertices.back() == 0);
  CHECK(e.vertices[1] >= static_cast<VertexId>(f.ball->size()));
  CHECK(e.cone_visits.size() == 1);
  CHECK(electric_geodesic(f.cs, 7, 7).vertices == std::vector<VertexId>{7});
}

TEST_CASE("electric geodesic lengths agree with a Dijkstra oracle") {
  const PathFixture f(6, "a.sub");
  const VertexId u = at(*f.ball, "aaaaab"), v = at(*f.ball, "b");
  const auto d = oracle::dijkstra(f.cs.graph(), u);
  const ElectricPath e = electric_geodesic(f.cs, u, v);
  CHECK(path_length(f.cs.graph(), e.vertices) == d[static_cast<std::size_t>(v)]);
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto x = static_cast<VertexId>(rng() % f.ball->size());
    const auto y = static_cast<VertexId>(rng() % f.ball->size());
    const auto dx = oracle::dijkstra(f.cs.graph(), x);
    const ElectricPath p = electric_geodesic(f.cs, x, y);
    CHECK(path_length(f.cs.graph(), p.vertices) == dx[static_cast<std::size_t>(y)]);
    CHECK_FALSE(p.backtracking);
  }
}

TEST_CASE("electric geodesics between components are a domain error") {
  MetricGraph g(2);
  const ConedSpace cs = electrify(g, {});
  CHECK_THROWS_AS(electric_geodesic(cs, 0, 1), DomainError);
}

TEST_CASE("de-electrification replaces cone visits by piece geodesics") {
  const PathFixture f(6, "a.sub");
  const AmbientPath amb = deelectrify(electric_geodesic(f.cs, at(*f.ball, "aaaaa"), 0), f.cs);
  std::vector<VertexId> expected;
  for (int k = 5; k >= 0; --k) expected.push_back(at(*f.ball, std::string(static_cast<std::size_t>(k), 'a')));
  CHECK(amb.vertices == expected);
  const auto plain = least_geodesic(f.ball->graph, at(*f.ball, "ab"), at(*f.ball, "bb"));
  CHECK(deelectrify(as_electric_path(f.cs, plain), f.cs).vertices == plain);
}

TEST_CASE("replaced segments lie in geodesic intervals of their pieces") {
  const PathFixture f(6, "a2b2.sub");
  std::mt19937 rng(3);
  std::size_t multi = 0;
  for (int t = 0; t < 200; ++t) {
    const auto u = static_cast<VertexId>(rng() % f.ball->size());
    const auto v = static_cast<VertexId>(rng() % f.ball->size());
    const ElectricPath e = electric_geodesic(f.cs, u, v);
    const AmbientPath amb = deelectrify(e, f.cs);
    multi += e.cone_visits.size() >= 2;
    for (std::size_t k = 0; k + 1 < amb.vertices.size(); ++k)
      CHECK(f.ball->graph.distance(amb.vertices[k], amb.vertices[k + 1]) == 2);
    for (const ReplacedSegment& seg : amb.replaced) {
      const VertexId a = amb.vertices[seg.begin], b = amb.vertices[seg.end];
      const HalfUnits dab = f.ball->graph.distance(a, b);
      for (std::size_t k = seg.begin; k <= seg.end; ++k) {
        const VertexId w = amb.vertices[k];
        CHECK(f.ball->graph.distance(a, w) + f.ball->graph.distance(w, b) == dab);
      }
    }
    // Re-electrifying each replaced segment recovers the electric length.
    std::vector<VertexId> back;
    std::size_t k = 0;
    for (const ReplacedSegment& seg : amb.replaced) {
      while (k < seg.begin) back.push_back(amb.vertices[k++]);
      back.push_back(amb.vertices[seg.begin]);
      back.push_back(f.cs.cone(seg.piece));
      k = seg.end;
    }
    while (k < amb.vertices.size()) back.push_back(amb.vertices[k++]);
    CHECK(path_length(f.cs.graph(), back) == path_length(f.cs.graph(), e.vertices));
  }
  CHECK(multi > 0);
}

TEST_CASE("quasigeodesic constants of geodesics and points") {
  const auto b = fx::ball(fx::presentation("genus2.txt"), 3);
  const auto g = least_geodesic(b->graph, 0, static_cast<VertexId>(b->size() - 1));
  CHECK(quasigeodesic_constants(g, b->graph).lambda <= 1.0);
  const std::vector<VertexId> one{4};
  const auto q = quasigeodesic_constants(one, b->graph);
  CHECK(q.lambda == 1.0);
  CHECK(q.mu == Dyadic(2));
}

TEST_CASE("electro-ambient constants on convex pieces are exact") {
  const SuiteStats s = electro_ambient_stats(PathFixture(8, "a.sub"));
  CHECK(s.lambda == 1.0);
  CHECK(s.travel == Dyadic(0));
  CHECK(s.entry == Dyadic(0));
  CHECK(s.exit == Dyadic(0));
}

TEST_CASE("electro-ambient constants stay at their recorded values") {
  // Values recorded at R = 8, seed 1, 100 pairs, eps = 1/2.
  const SuiteStats a2b2 = electro_ambient_stats(PathFixture(8, "a2b2.sub"));
  CHECK(a2b2.lambda <= 2.5);
  CHECK(a2b2.travel <= Dyadic(4));
  CHECK(a2b2.entry <= Dyadic(4));
  CHECK(a2b2.exit <= Dyadic(4));
  const SuiteStats k2 = electro_ambient_stats(PathFixture(8, "kernel2.sub"));
  CHECK(k2.lambda <= 1.0);
  CHECK(k2.travel <= Dyadic(14));
  CHECK(k2.entry <= Dyadic(14));
  CHECK(k2.exit <= Dyadic(15));
}

TEST_CASE("penetration of an electrified geodesic against itself") {
  const PathFixture f(6, "a2b2.sub");
  const auto g = least_geodesic(f.ball->graph, at(*f.ball, "aabbA"), at(*f.ball, "BBaab"));
  const auto rep = penetration_diagnostics(as_electric_path(f.cs, g), g, f.cs, Dyadic::fraction(1, 2));
  CHECK(rep.max_entry_offset == Dyadic(0));
  CHECK(rep.max_exit_offset == Dyadic(0));
  CHECK(rep.max_travel == Dyadic(0));
  const auto near = distance_to_set(f.ball->graph, g);
  for (const auto& r : rep.pieces) {
    HalfUnits best = kInfiniteHalves;
    for (VertexId y : f.cs.family()[r.piece]) best = std::min(best, near[static_cast<std::size_t>(y)]);
    CHECK(best <= 1);
  }
}

TEST_CASE("meetings of the a-axis with itself") {
  const auto b = fx::ball(fx::f2(), 8);
  const auto A = fx::axis(*b, 'a');
  const MeetingParams params{Dyadic(10), 0.01, Dyadic(0)};
  const MeetingReport r = detect_meetings(b->graph, A, A, params);
  std::size_t expected = 0;
  for (VertexId x : A)
    for (VertexId y : A)
      if (x < y && b->dist(x, y) >= 10) ++expected;
  CHECK(r.raw_pairs == expected);
  REQUIRE(r.pairs.size() == 1);
  CHECK(b->dist(r.pairs[0].first, r.pairs[0].second) == 16);
  for (const auto& [x, y] : r.pairs) CHECK(x != y);
}

TEST_CASE("meetings are symmetric and monotone in Delta") {
  const Presentation p = fx::f2();
  const auto b = fx::ball(p, 7);
  const auto fam = fx::cosets(p, *b, "kernel2.sub");
  const auto H = fx::axis(*b, 'a');
  const Piece& Y = fam.pieces.front();
  std::size_t last = SIZE_MAX;
  for (int D : {4, 6, 8, 10}) {
    const MeetingParams params{Dyadic(D), 0.01, Dyadic(0)};
    const auto hy = detect_meetings(b->graph, H, Y, params);
    const auto yh = detect_meetings(b->graph, Y, H, params);
    CHECK(hy.pairs == yh.pairs);
    CHECK(hy.raw_pairs <= last);
    last = hy.raw_pairs;
  }
}

TEST_CASE("far-apart sets never meet") {
  const auto b = fx::ball(fx::f2(), 8);
  const auto A = fx::axis(*b, 'a');
  std::vector<VertexId> far;
  for (std::size_t v = 0; v < b->size(); ++v)
    if (b->name(static_cast<VertexId>(v)).rfind("bbbb", 0) == 0) far.push_back(static_cast<VertexId>(v));
  CHECK(detect_meetings(b->graph, A, far, MeetingParams{Dyadic(2), 0.01, Dyadic(0)}).pairs.empty());
  CHECK_THROWS_AS(detect_meetings(b->graph, A, A, MeetingParams{Dyadic(0), 0.01, Dyadic(0)}), DomainError);
}

}  // TEST_SUITE
