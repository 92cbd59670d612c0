#include <doctest.h>

#include <random>

#include "gglab/errors.hpp"
#include "gglab/subgroup/core_graph.hpp"
#include "../support/fixtures.hpp"

using namespace gglab;

namespace {

const Alphabet kAB("ab");

CoreGraph fold(std::initializer_list<const char*> gens) {
  std::vector<Word> ws;
  for (const char* g : gens) ws.push_back(free_reduce(kAB.parse(g), kAB));
  return CoreGraph::fold(kAB, ws);
}

bool in(const CoreGraph& H, const std::string& w) { return H.accepts(free_reduce(kAB.parse(w), kAB)); }

/// Membership against generator-product enumeration on all reduced words up to length 6.
void check_membership_oracle(const CoreGraph& H, const std::vector<std::string>& gens) {
  const auto members = oracle::subgroup_elements(gens, 10, 6);
  for (const auto& w : oracle::reduced_words("ab", 6)) CHECK_MESSAGE(in(H, w) == members.count(w) > 0, w);
}

}  // namespace

TEST_SUITE("subgroup-machine") {

TEST_CASE("folding cyclic and trivial subgroups") {
  const CoreGraph a = fold({"a"});
  CHECK(a.state_count() == 1);
  CHECK(a.edge_count() == 1);
  CHECK(a.rank() == 1);
  const CoreGraph triv = fold({});
  CHECK(triv.state_count() == 1);
  CHECK(triv.rank() == 0);
}

TEST_CASE("membership for generator lists agrees with product enumeration") {
  check_membership_oracle(fold({"aa", "bb", "aba"}), {"aa", "bb", "aba"});
  check_membership_oracle(fold({"aabb"}), {"aabb"});
  check_membership_oracle(fold({"a", "bb", "baB"}), {"a", "bb", "baB"});
  check_membership_oracle(fold({"a", "baB"}), {"a", "baB"});
}

TEST_CASE("membership examples") {
  CHECK(in(fold({"a"}), "aaaaa"));
  CHECK_FALSE(in(fold({"a"}), "b"));
  CHECK(in(fold({"aabb"}), "aabbaabb"));
}

TEST_CASE("rank equals edges minus states plus one") {
  for (const CoreGraph& H : {fold({"aa", "bb", "aba"}), fold({"a", "bb", "baB"}), fold({"aabb"})})
    CHECK(H.rank() == H.edge_count() - H.state_count() + 1);
  CHECK(fold({"a", "bb", "baB"}).rank() == 3);  // index 2 in a rank 2 free group
}

TEST_CASE("folded graphs are deterministic and inverse-consistent") {
  const CoreGraph H = fold({"aa", "bb", "aba"});
  CHECK(H == fold({"aa", "bb", "aba"}));
  for (State s = 0; s < static_cast<State>(H.state_count()); ++s)
    for (Letter l = 0; l < kAB.size(); ++l) {
      const State t = H.transition(s, l);
      if (t != kNoState) CHECK(H.transition(t, kAB.inverse(l)) == s);
    }
}

TEST_CASE("pullbacks compute intersections") {
  CHECK(CoreGraph::pullback(fold({"a"}), fold({"b"})).rank() == 0);
  const CoreGraph H = fold({"aabb", "ab"});
  const CoreGraph HH = CoreGraph::pullback(H, H);
  CHECK(HH.signature() == H.signature());
  const CoreGraph A = fold({"a"});
  const CoreGraph bA = A.conjugate(kAB.parse("b"));
  CHECK(CoreGraph::pullback(A, bA).rank() == 0);
  const auto left = oracle::subgroup_elements({"a"}, 10, 10);
  const auto right = oracle::subgroup_elements({"baB"}, 10, 10);
  for (const auto& w : left)
    if (!w.empty()) CHECK(right.count(w) == 0);
}

TEST_CASE("pullback loops lie in both subgroups and witness nontrivial intersections") {
  const CoreGraph H1 = fold({"a", "bb", "baB"});
  const CoreGraph H2 = fold({"aa", "b"});
  const CoreGraph I = CoreGraph::pullback(H1, H2);
  REQUIRE(I.rank() >= 1);
  for (const Word& g : I.basis()) {
    CHECK(H1.accepts(g));
    CHECK(H2.accepts(g));
  }
  const Word w = I.shortest_loop();
  CHECK_FALSE(w.empty());
  CHECK(w.size() <= 2 * I.state_count());
  CHECK(H1.accepts(w));
  CHECK(H2.accepts(w));
}

TEST_CASE("conjugation") {
  const CoreGraph A = fold({"a"});
  CHECK(A.conjugate(Word{}).signature() == A.signature());
  CHECK(A.conjugate(kAB.parse("aaa")).signature() == A.signature());
  const CoreGraph bA = A.conjugate(kAB.parse("b"));
  CHECK(bA.accepts(kAB.parse("baB")));
  CHECK_FALSE(bA.accepts(kAB.parse("a")));
}

TEST_CASE("double coset canonical forms") {
  const CoreGraph A = fold({"a"});
  CHECK(kAB.format(double_coset_canonical(A, kAB.parse("aaabaa"))) == "b");
  const CoreGraph K = fold({"a", "bb", "baB"});
  CHECK(double_coset_canonical(K, kAB.parse("bab")).empty());
}

TEST_CASE("double coset canonical form is constant on sampled double cosets") {
  const CoreGraph H = fold({"aabb"});
  const Word g = kAB.parse("aab");
  const Word c = double_coset_canonical(H, g);
  CHECK(c.size() <= g.size());
  const auto elems = oracle::subgroup_elements({"aabb"}, 8, 6);
  const std::vector<std::string> hs(elems.begin(), elems.end());
  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    const std::string w = oracle::reduce(hs[rng() % hs.size()] + "aab" + hs[rng() % hs.size()]);
    const Word cw = double_coset_canonical(H, kAB.parse(w));
    CHECK(cw == c);
    CHECK(cw.size() <= w.size());
  }
}

TEST_CASE("automatic coset pieces match an exhaustive coset scan") {
  const Presentation f2 = fx::f2();
  const auto ball = fx::ball(f2, 3);
  const auto fam = fx::cosets(f2, *ball, "a.sub");
  // Oracle: group ball vertices by the coset g<a>, i.e. by g with trailing a-letters stripped.
  std::map<std::string, std::vector<VertexId>> by_coset;
  for (std::size_t v = 0; v < ball->size(); ++v) {
    std::string w = ball->name(static_cast<VertexId>(v));
    if (w == "1") w.clear();
    while (!w.empty() && (w.back() == 'a' || w.back() == 'A')) w.pop_back();
    by_coset[w].push_back(static_cast<VertexId>(v));
  }
  std::set<std::vector<VertexId>> expected;
  for (auto& [k, vs] : by_coset)
    if (vs.size() >= 2) expected.insert(vs);
  const std::set<std::vector<VertexId>> got(fam.pieces.begin(), fam.pieces.end());
  CHECK(got == expected);
  CHECK(fam.pieces.size() == fam.representatives.size());
}

TEST_CASE("explicit coset pieces") {
  const Presentation f2 = fx::f2();
  const auto ball = fx::ball(f2, 3);
  const auto whole = coset_pieces(SubgroupModel::make(f2, fx::subgroup(f2, "g1.sub")), *ball, {Word{}});
  REQUIRE(whole.pieces.size() == 1);
  CHECK(whole.pieces[0].size() == ball->size());
  const SubgroupModel A = SubgroupModel::make(f2, fx::subgroup(f2, "a.sub"));
  const auto two = coset_pieces(A, *ball, {Word{}, f2.alphabet.parse("b")});
  CHECK(two.pieces[0] == fx::axis(*ball, 'a'));
  for (VertexId v : two.pieces[1]) {
    const std::string n = ball->name(v);
    CHECK(n[0] == 'b');
    CHECK(n.substr(1).find_first_not_of(n.size() > 1 && n[1] == 'A' ? "A" : "a") == std::string::npos);
  }
  CHECK(two.pieces[1].size() == 5);  // b, ba, baa, bA, bAA
  CHECK_THROWS_AS(coset_pieces(A, *ball, {Word{}, f2.alphabet.parse("aa")}), InputError);
}

TEST_CASE("pieces are exactly the members of their coset") {
  const Presentation f2 = fx::f2();
  const auto ball = fx::ball(f2, 4);
  const SubgroupModel K = SubgroupModel::make(f2, fx::subgroup(f2, "kernel2.sub"));
  const auto fam = coset_pieces_auto(K, *ball);
  for (std::size_t i = 0; i < fam.pieces.size(); ++i) {
    const Word rinv = inverse(fam.representatives[i], f2.alphabet);
    for (std::size_t v = 0; v < ball->size(); ++v) {
      const bool member = K.contains(multiply(rinv, ball->vertices[v], f2.alphabet));
      CHECK(member == std::binary_search(fam.pieces[i].begin(), fam.pieces[i].end(), static_cast<VertexId>(v)));
    }
  }
}

}  // TEST_SUITE
