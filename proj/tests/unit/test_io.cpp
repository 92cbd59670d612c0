#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <sstream>

#include "gglab/errors.hpp"
#include "gglab/graded/graded.hpp"
#include "gglab/io/json_io.hpp"
#include "gglab/io/text_formats.hpp"
#include "../support/fixtures.hpp"

using namespace gglab;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

/// Every non-comment column must be named in a `# name: ... (unit)` line.
void check_csv_header(const std::string& csv) {
  const auto ls = lines(csv);
  std::size_t i = 0;
  std::vector<std::string> documented;
  for (; i < ls.size() && ls[i].rfind("# ", 0) == 0; ++i) {
    const auto colon = ls[i].find(':');
    REQUIRE(colon != std::string::npos);
    documented.push_back(ls[i].substr(2, colon - 2));
    CHECK(ls[i].back() == ')');
  }
  REQUIRE(i < ls.size());
  std::vector<std::string> header;
  std::istringstream row(ls[i]);
  for (std::string c; std::getline(row, c, ',');) header.push_back(c);
  CHECK(header == documented);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("presentation text") {
  const Presentation p = parse_presentation("# comment\ngens: a b\nrel: abAB # commutator\n");
  CHECK(p.alphabet.generators() == "ab");
  REQUIRE(p.relators.size() == 1);
  CHECK(p.alphabet.format(p.relators[0]) == "abAB");

  const Presentation g2 = fx::presentation("genus2.txt");
  CHECK(g2.alphabet.rank() == 4);
  CHECK(g2.relators.size() == 1);

  CHECK(message_of([] { parse_presentation("rel: ab\n", "x.txt"); }).find("x.txt") != std::string::npos);
  CHECK(message_of([] { parse_presentation("gens: a b\nfoo: 1\n", "x.txt"); }).find("x.txt:2") != std::string::npos);
  CHECK_THROWS_AS(parse_presentation("gens: a a\n"), InputError);
  CHECK_THROWS_AS(load_presentation(GGLAB_FIXTURE_DIR "/missing.txt"), InputError);
}

TEST_CASE("subgroup text") {
  const Alphabet ab("ab");
  const auto gens = parse_subgroup("# generators\naabb\n\n  ab  # trailing\n", ab);
  REQUIRE(gens.size() == 2);
  CHECK(ab.format(gens[0]) == "aabb");
  CHECK(ab.format(gens[1]) == "ab");
  const std::string msg = message_of([&] { parse_subgroup("a\nax\n", ab, "h.sub"); });
  CHECK(msg.find("h.sub:2") != std::string::npos);
}

TEST_CASE("length literals") {
  CHECK(Dyadic::parse("inf").is_infinite());
  CHECK(Dyadic::parse("1.5") == Dyadic::fraction(3, 1));
  CHECK(Dyadic::parse("-0.25") == Dyadic::fraction(-1, 2));
  CHECK(Dyadic::parse("3") == Dyadic(3));
  CHECK_THROWS_AS(Dyadic::parse("0.1"), InputError);
  CHECK_THROWS_AS(Dyadic::parse("x"), InputError);
  CHECK(to_json(Dyadic::infinity()) == Json("inf"));
  CHECK(to_json(Dyadic::fraction(5, 1)) == Json("2.5"));
  for (const char* s : {"0", "0.5", "7", "inf", "-1.75"}) CHECK(Dyadic::parse(s).to_string() == s);
}

TEST_CASE("graph JSON round trip") {
  const MetricGraph tree = graph_from_json(Json::parse(read_text_file(GGLAB_FIXTURE_DIR "/tree.json")));
  CHECK(tree.size() == 5);
  CHECK(tree.name(4) == "w");
  CHECK(tree.distance(1, 4) == 6);
  const MetricGraph back = graph_from_json(graph_to_json(tree));
  CHECK(back.names() == tree.names());
  for (VertexId u = 0; u < 5; ++u)
    for (VertexId v = 0; v < 5; ++v) CHECK(back.distance(u, v) == tree.distance(u, v));
  CHECK(dump(graph_to_json(back)) == dump(graph_to_json(tree)));

  const MetricGraph half = graph_from_json(Json::parse(R"({"vertices": 2, "edges": [[0, 1, "0.5"]]})"));
  CHECK(half.distance(0, 1) == 1);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": 2, "edges": [[0]]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges": []})")), InputError);
}

TEST_CASE("coned space JSON lists cones") {
  const auto ball = fx::ball(fx::f2(), 2);
  const ConedSpace cs = electrify(ball->graph, {fx::axis(*ball, 'a')});
  const Json j = coned_to_json(cs);
  REQUIRE(j["cones"].size() == 1);
  const auto cone = j["cones"][0]["vertex"].get<VertexId>();
  CHECK(cone == static_cast<VertexId>(ball->size()));
  CHECK(j["vertices"].size() == ball->size() + 1);
}

TEST_CASE("dumps are canonical") {
  const Json a = Json::parse(R"({"b": 1, "a": [1, 2]})");
  const Json b = Json::parse(R"({"a": [1, 2], "b": 1})");
  CHECK(dump(a) == dump(b));
  CHECK(dump(a).back() == '\n');
}

TEST_CASE("CSV headers document columns and units") {
  const Presentation f2 = fx::f2();
  const GradedVerdict v = graded_verdict(f2, {fx::subgroup(f2, "a.sub")}, [] {
    GradedOptions o;
    o.radius = 6;
    return o;
  }());
  check_csv_header(graded_levels_csv(v));
  check_csv_header(psi_csv(v.levels.back().embedding.psi_table));
  REQUIRE(v.geometric.has_value());
  check_csv_header(height_levels_csv(*v.geometric));
}

TEST_CASE("vertex budget from the environment") {
  setenv("GGLAB_BUDGET", "1234", 1);
  CHECK(default_vertex_budget() == 1234);
  unsetenv("GGLAB_BUDGET");
  CHECK(default_vertex_budget() == 200000);
}

}  // TEST_SUITE
