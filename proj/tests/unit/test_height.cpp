#include <doctest.h>

#include "gglab/errors.hpp"
#include "gglab/graded/graded.hpp"
#include "gglab/height/algebraic.hpp"
#include "gglab/height/geometric.hpp"
#include "gglab/metric/geodesics.hpp"
#include "../support/fixtures.hpp"

using namespace gglab;

namespace {

VertexId at(const CayleyBall& b, const std::string& w) { return b.find(b.alphabet().parse(w)); }

/// Geometric setting on the plain Cayley ball or the presentation's ambient metric.
struct HeightFixture {
  Ambient amb;
  Family pieces;
  GeometricSetting setting;
  HeightFixture(const std::string& pres, const std::string& sub, int R)
      : amb(make_ambient(fx::presentation(pres), R)),
        pieces(subgroup_pieces(amb.ball->presentation(), *amb.ball,
                               {fx::subgroup(amb.ball->presentation(), sub)})),
        setting(make_geometric_setting(*amb.ball, *amb.metric, pieces, amb.delta.delta4)) {}
  std::size_t piece_with(VertexId v) const {
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (std::binary_search(pieces[i].begin(), pieces[i].end(), v)) return i;
    return SIZE_MAX;
  }
};

GeometricOptions grid(std::vector<int> g, int bound) {
  GeometricOptions o;
  o.delta_grid = std::move(g);
  o.bound = Dyadic(bound);
  return o;
}

std::vector<std::vector<Word>> one(const Presentation& p, const std::string& sub) { return {fx::subgroup(p, sub)}; }

}  // namespace

TEST_SUITE("height") {

TEST_CASE("algebraic height of a malnormal cyclic subgroup") {
  const Presentation f2 = fx::f2();
  AlgebraicHeightOptions o;
  o.L = 6;
  const auto r = algebraic_height(f2, one(f2, "a.sub"), o);
  CHECK(r.height == 1);
  CHECK(r.exhaustive);
  // Oracle: g<a>g^-1 meets <a> nontrivially only if g a^k g^-1 is a power of a.
  for (const auto& g : oracle::reduced_words("ab", 6)) {
    bool g_in_a = g.find_first_not_of("aA") == std::string::npos;
    bool meets = false;
    for (int k = 1; k <= 3 && !meets; ++k) {
      const std::string c = oracle::reduce(g + std::string(static_cast<std::size_t>(k), 'a') + oracle::invert(g));
      meets = c.find_first_not_of("aA") == std::string::npos;
    }
    CHECK(meets == g_in_a);
  }
}

TEST_CASE("algebraic height of the index-two kernel") {
  const Presentation f2 = fx::f2();
  AlgebraicHeightOptions o;
  o.L = 4;
  const auto r = algebraic_height(f2, one(f2, "kernel2.sub"), o);
  CHECK(r.height == 2);
  CHECK(r.exhaustive);
  REQUIRE(r.witnesses.size() >= 2);
  for (const auto& w : r.witnesses[1]) {
    CHECK(w.rank >= 1);
    CHECK(w.cosets.size() == 2);
  }
}

TEST_CASE("the whole group has height one") {
  const Presentation f2 = fx::f2();
  const auto r = algebraic_height(f2, one(f2, "g1.sub"));
  CHECK(r.height == 1);
}

TEST_CASE("algebraic witnesses for a non-malnormal subgroup are verified") {
  const Presentation f2 = fx::f2();
  const auto r = algebraic_height(f2, one(f2, "a_bab.sub"));
  CHECK(r.height >= 2);
  REQUIRE(r.witnesses.size() >= 2);
  REQUIRE_FALSE(r.witnesses[1].empty());
  const CoreGraph H = CoreGraph::fold(f2.alphabet, fx::subgroup(f2, "a_bab.sub"));
  for (const auto& w : r.witnesses[1]) {
    REQUIRE_FALSE(w.element.empty());
    CoreGraph meet = H.conjugate(w.cosets[0].rep);
    for (const auto& c : w.cosets) {
      // The element lies in every conjugate g H g^-1.
      const Word inside = multiply(multiply(inverse(c.rep, f2.alphabet), w.element, f2.alphabet), c.rep, f2.alphabet);
      CHECK(H.accepts(inside));
      meet = CoreGraph::pullback(meet, H.conjugate(c.rep));
    }
    CHECK(meet.rank() == w.rank);
  }
}

TEST_CASE("algebraic height needs a free group") {
  const Presentation g2 = fx::presentation("genus2.txt");
  CHECK_THROWS_AS(algebraic_height(g2, {{g2.alphabet.parse("a")}}), UnsupportedError);
}

TEST_CASE("algebraic height is monotone in the enumeration length") {
  const Presentation f2 = fx::f2();
  int last = 0;
  bool was_exhaustive = false;
  for (int L : {1, 2, 3, 4}) {
    AlgebraicHeightOptions o;
    o.L = L;
    const auto r = algebraic_height(f2, one(f2, "a_bab.sub"), o);
    CHECK(r.height >= last);
    if (was_exhaustive) CHECK(r.exhaustive);
    last = r.height;
    was_exhaustive = r.exhaustive;
  }
}

TEST_CASE("short intersections of a-cosets are rejected") {
  const HeightFixture f("f2.txt", "a.sub", 8);
  const std::size_t A = f.piece_with(0), bA = f.piece_with(at(*f.amb.ball, "b"));
  REQUIRE(A != bA);
  // Oracle: J = A^{+1} cap bA^{+1} = {e, b}.
  const auto dA = distance_to_set(*f.amb.metric, f.pieces[A]);
  const auto dB = distance_to_set(*f.amb.metric, f.pieces[bA]);
  std::vector<VertexId> J;
  for (std::size_t v = 0; v < f.amb.ball->size(); ++v)
    if (dA[v] <= 2 && dB[v] <= 2) J.push_back(static_cast<VertexId>(v));
  CHECK(J == std::vector<VertexId>{0, at(*f.amb.ball, "b")});
  const auto found = enumerate_geometric_intersections(f.setting, 2, grid({1}, 2));
  for (const auto& gi : found) CHECK_FALSE((gi.tuple == std::vector<std::size_t>{std::min(A, bA), std::max(A, bA)}));
  CHECK(found.empty());
  CHECK_THROWS_AS(enumerate_geometric_intersections(f.setting, 1, grid({1}, 2)), ConfigurationError);
}

TEST_CASE("a repeated coset never forms an intersection") {
  const HeightFixture f("f2.txt", "a.sub", 8);
  GeometricSetting twin = f.setting;
  const Piece axis = f.pieces[f.piece_with(0)];
  twin.pieces = {axis, axis};
  CHECK(enumerate_geometric_intersections(twin, 2, grid({1, 2}, 2)).empty());
}

TEST_CASE("conjugate-overlapping cosets give long accepted intersections") {
  const HeightFixture f("f2.txt", "a_bab.sub", 8);
  const std::size_t H = f.piece_with(0), bH = f.piece_with(at(*f.amb.ball, "b"));
  const std::vector<std::size_t> tuple{std::min(H, bH), std::max(H, bH)};
  const auto found = enumerate_geometric_intersections(f.setting, 2, grid({1}, 2));
  auto it = std::find_if(found.begin(), found.end(), [&](const auto& gi) { return gi.tuple == tuple; });
  REQUIRE(it != found.end());
  CHECK(it->diameter >= Dyadic(10));
  // J follows the b<a> segment: b a^k lies in bH and within one step of H.
  for (int k = -3; k <= 3; ++k) {
    const std::string w = "b" + std::string(static_cast<std::size_t>(std::abs(k)), k < 0 ? 'A' : 'a');
    CHECK(std::binary_search(it->J.begin(), it->J.end(), at(*f.amb.ball, w)));
  }
}

TEST_CASE("geometric height of the cyclic subgroup") {
  const HeightFixture f("f2.txt", "a.sub", 10);
  const auto r = geometric_height(f.setting, grid({1}, 20));
  CHECK(r.height == 1);
  for (const auto& level : r.levels)
    for (const auto& gi : level) CHECK(gi.diameter <= Dyadic(20));
}

TEST_CASE("bounded pieces give height zero") {
  const HeightFixture f("f2.txt", "a.sub", 6);
  GeometricSetting points = f.setting;
  points.pieces.clear();
  for (VertexId v = 0; v < 40; ++v) points.pieces.push_back({v});
  CHECK(geometric_height(points, grid({1}, 2)).height == 0);
}

TEST_CASE("geometric height grows with the radius on the amalgam") {
  int last = 0;
  for (int R : {6, 8}) {
    const HeightFixture f("amalgam_z2.txt", "a.sub", R);
    GeometricOptions o = grid(default_delta_grid(f.amb.ball->safe_radius), std::max(1, f.amb.ball->safe_radius / 5));
    const int h = geometric_height(f.setting, o).height;
    CHECK(h > last);
    last = h;
  }
}

TEST_CASE("geometric height is monotone in the bound and the radius") {
  int last_R = 0;
  for (int R : {4, 6}) {
    const HeightFixture f("f2.txt", "kernel2.sub", R);
    int last_B = 1 << 20;
    for (int B : {1, 2, 4, 8}) {
      const int h = geometric_height(f.setting, grid({1}, B)).height;
      CHECK(h <= last_B);
      last_B = h;
    }
    const int h = geometric_height(f.setting, grid({1}, 2)).height;
    CHECK(h >= last_R);
    last_R = h;
  }
}

TEST_CASE("ball concentration") {
  const HeightFixture f("f2.txt", "kernel2.sub", 6);
  const Piece& H = f.pieces[f.piece_with(0)];
  const ConcentrationResult single = ball_concentration_check(*f.amb.metric, {H}, H, Dyadic(0), Dyadic(0));
  CHECK(single.found);
  CHECK(single.x == H.front());
  CHECK(single.radius == Dyadic(0));
  const Piece& bH = f.pieces[f.piece_with(at(*f.amb.ball, "b"))];
  const auto J = enumerate_geometric_intersections(f.setting, 2, grid({1}, 2));
  REQUIRE_FALSE(J.empty());
  const Dyadic C = quasiconvexity_constant(*f.amb.metric, H, all_pairs(H)).constant;
  const auto r = ball_concentration_check(*f.amb.metric, {H, bH}, J.front().J, f.amb.delta.delta4, C);
  CHECK(r.found);
  CHECK(r.radius <= Dyadic(2) * C + Dyadic(10) * f.amb.delta.delta4);
  const HeightFixture a("f2.txt", "a.sub", 6);
  const auto none = ball_concentration_check(*a.amb.metric, {a.pieces[0], a.pieces[1]}, {0}, Dyadic(0), Dyadic(0));
  CHECK_FALSE(none.found);
  CHECK_FALSE(none.note.empty());
}

TEST_CASE("qi-intersection clauses") {
  const HeightFixture f("f2.txt", "a.sub", 6);
  const auto reps = qi_intersection_check(f.setting, {f.pieces, {}});
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].passes);
  CHECK(reps[0].projection == Dyadic(0));
  CHECK(reps[0].lambda == Dyadic(1));
  CHECK(reps[1].passes);
  const Piece axis = f.pieces[f.piece_with(0)];
  const auto twins = qi_intersection_check(f.setting, {{axis, axis}});
  CHECK(twins[0].containment_pairs == 2);
}

TEST_CASE("coarse connectivity mesh") {
  const auto b = fx::ball(fx::f2(), 6);
  const auto A = fx::axis(*b, 'a');
  CHECK(coarse_connectivity(b->graph, A, 8) == Dyadic(1));
  std::vector<VertexId> even;
  for (VertexId v : A)
    if (b->level[static_cast<std::size_t>(v)] % 2 == 0) even.push_back(v);
  CHECK(coarse_connectivity(b->graph, even, 8) == Dyadic(2));
  CHECK(coarse_connectivity(b->graph, {at(*b, "aaaaaa"), at(*b, "BBBBBB")}, 8).is_infinite());
}

}  // TEST_SUITE
