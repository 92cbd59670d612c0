#include <doctest.h>

#include <random>

#include "gglab/graded/graded.hpp"
#include "../support/fixtures.hpp"

using namespace gglab;

namespace {

std::vector<std::vector<Word>> one(const Presentation& p, const std::string& sub) { return {fx::subgroup(p, sub)}; }

GradedOptions at_radius(int R) {
  GradedOptions o;
  o.radius = R;
  return o;
}

bool has_notice(const GradedVerdict& v, const std::string& needle) {
  return std::any_of(v.truncated.begin(), v.truncated.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_SUITE("graded") {

TEST_CASE("conjugacy representatives of cyclic and kernel witnesses") {
  const Presentation f2 = fx::f2();
  const auto a = algebraic_height(f2, one(f2, "a.sub"));
  const auto reps = conjugacy_representatives(a.witnesses[0]);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].accepts(f2.alphabet.parse("a")));
  CHECK(reps[0].rank() == 1);
  CHECK(conjugacy_representatives({}).empty());

  AlgebraicHeightOptions o;
  o.L = 3;
  const auto k = algebraic_height(f2, one(f2, "a_bab.sub"), o);
  REQUIRE(k.witnesses.size() >= 2);
  const auto& level2 = k.witnesses[1];
  // Oracle: classify by trying every conjugator of length <= 2L.
  std::vector<CoreGraph> classes;
  const auto conjugators = oracle::reduced_words("ab", 2 * o.L);
  for (const auto& w : level2) {
    const bool fresh = std::none_of(classes.begin(), classes.end(), [&](const CoreGraph& c) {
      return std::any_of(conjugators.begin(), conjugators.end(), [&](const std::string& g) {
        return w.intersection.conjugate(f2.alphabet.parse(g)).signature() == c.signature();
      });
    });
    if (fresh) classes.push_back(w.intersection);
  }
  CHECK(conjugacy_representatives(level2).size() == classes.size());
}

TEST_CASE("translation classes of vertex sets") {
  const auto ball = fx::ball(fx::f2(), 4);
  const auto at = [&](const std::string& w) { return ball->find(ball->alphabet().parse(w)); };
  std::vector<Piece> sets{{at(""), at("a")}, {at("b"), at("ba")}, {at(""), at("b")}, {at("a"), at("ab")}};
  for (auto& s : sets) std::sort(s.begin(), s.end());
  CHECK(translation_representatives(*ball, sets) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("level metrics") {
  const Presentation f2 = fx::f2();
  const Ambient amb = make_ambient(f2, 5);
  const ConedSpace flat = build_level_metric(amb, {});
  for (VertexId v = 0; v < static_cast<VertexId>(amb.ball->size()); v += 11) CHECK(flat.d_el(0, v) == amb.metric->distance(0, v));
  const Family pieces = subgroup_pieces(f2, *amb.ball, one(f2, "a.sub"));
  const ConedSpace d1 = build_level_metric(amb, pieces);
  const ConedSpace direct = electrify(amb.ball->graph, pieces);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto u = static_cast<VertexId>(rng() % amb.ball->size());
    const auto v = static_cast<VertexId>(rng() % amb.ball->size());
    CHECK(d1.d_el(u, v) == direct.d_el(u, v));
    CHECK(d1.d_el(u, v) <= amb.metric->distance(u, v));
  }
}

TEST_CASE("graded verdict for the cyclic subgroup") {
  const Presentation f2 = fx::f2();
  const GradedVerdict v = graded_verdict(f2, one(f2, "a.sub"), at_radius(8));
  CHECK(v.overall);
  CHECK(v.finite_height);
  CHECK(v.height == 1);
  REQUIRE(v.levels.size() == 2);
  // Recorded at R = 8: the a-coset cone-off has four-point constant 0.
  CHECK(v.levels[0].embedding.delta_el.delta4 == Dyadic(0));
  CHECK(v.levels[1].pieces == 0);
  const auto& psi = v.levels[1].embedding.psi_table.buckets;
  REQUIRE_FALSE(psi.empty());
  for (const auto& b : psi) CHECK(b.raw == Dyadic(b.r));
  for (const auto& l : v.levels) CHECK(l.verdict);
}

TEST_CASE("the whole group is graded with height one") {
  const Presentation f2 = fx::f2();
  const GradedVerdict v = graded_verdict(f2, one(f2, "g1.sub"), at_radius(5));
  CHECK(v.overall);
  CHECK(v.height == 1);
  REQUIRE_FALSE(v.levels.empty());
  CHECK(v.levels[0].pieces == 1);
  const Ambient amb = make_ambient(f2, 5);
  const ConedSpace d1 = build_level_metric(amb, subgroup_pieces(f2, *amb.ball, one(f2, "g1.sub")));
  for (VertexId u = 0; u < static_cast<VertexId>(amb.ball->size()); u += 17) CHECK(d1.d_el(0, u) <= 2);
}

TEST_CASE("the amalgam fixture never stabilizes") {
  const GradedVerdict v = graded_verdict(fx::presentation("amalgam_z2.txt"), {{Word{std::vector<Letter>{0}}}},
                                         at_radius(8));
  CHECK_FALSE(v.overall);
  CHECK_FALSE(v.finite_height);
  REQUIRE(v.height_previous.has_value());
  CHECK(*v.height_previous < v.height);
  CHECK(has_notice(v, "stabiliz"));
}

TEST_CASE("the top level metric is close to the ambient metric") {
  const Presentation f2 = fx::f2();
  for (const char* sub : {"a.sub", "a2b2.sub"}) {
    const GradedVerdict v = graded_verdict(f2, one(f2, sub), at_radius(6));
    REQUIRE(v.levels.size() == static_cast<std::size_t>(v.height + 1));
    CHECK(v.levels.back().max_shortening <= v.bound);
  }
}

TEST_CASE("raising the properness threshold never rescues a level") {
  const Presentation f2 = fx::f2();
  for (const char* sub : {"a2b2.sub", "kernel2.sub"}) {
    GradedOptions lo = at_radius(6), hi = at_radius(6);
    hi.proper_threshold = Dyadic(6);
    const GradedVerdict a = graded_verdict(f2, one(f2, sub), lo);
    const GradedVerdict b = graded_verdict(f2, one(f2, sub), hi);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i)
      if (b.levels[i].verdict) CHECK(a.levels[i].verdict);
  }
}

TEST_CASE("algebraic mode uses conjugacy classes of intersections") {
  const Presentation f2 = fx::f2();
  GradedOptions o = at_radius(6);
  o.mode = GradedMode::Algebraic;
  o.L = 4;
  const GradedVerdict v = graded_verdict(f2, one(f2, "kernel2.sub"), o);
  CHECK(v.height == 2);
  REQUIRE(v.levels.size() == 3);
  CHECK(v.levels[1].representatives.size() == 1);
  // Both cosets of an index-2 subgroup lie within 1 of each other, so going
  // through the other cone bounds the angular metric by 3.
  const auto& psi = v.levels[2].embedding.psi_table.buckets;
  REQUIRE_FALSE(psi.empty());
  for (const auto& b : psi) CHECK(b.raw <= Dyadic(3));
  CHECK_FALSE(v.levels[2].embedding.proper);
  CHECK_FALSE(v.overall);
}

TEST_CASE("round trip on small free-group fixtures") {
  const Presentation f2 = fx::f2();
  RoundtripOptions o;
  o.graded = at_radius(6);
  const RoundtripRecord a = roundtrip_theorem_check(f2, fx::subgroup(f2, "a.sub"), o);
  CHECK(a.quasiconvex);
  CHECK(a.qc_constant == Dyadic(0));
  CHECK(a.graded.overall);
  CHECK(a.agreement);
  const RoundtripRecord b = roundtrip_theorem_check(f2, fx::subgroup(f2, "a2b2.sub"), o);
  CHECK(b.agreement);
  CHECK(b.quasiconvex);
  REQUIRE(b.properness.size() == 3);
  for (std::size_t k = 1; k < b.properness.size(); ++k)
    CHECK(b.properness[k - 1].max_orbit_points <= b.properness[k].max_orbit_points);
}

}  // TEST_SUITE
