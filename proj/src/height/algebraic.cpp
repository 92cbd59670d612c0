#include "gglab/height/algebraic.hpp"

#include <map>

#include "gglab/errors.hpp"

namespace gglab {

std::vector<Word> reduced_words_up_to(const Alphabet& alphabet, int L) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= L; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Letter l = 0; l < alphabet.size(); ++l) {
        if (!out[i].empty() && out[i].back() == alphabet.inverse(l)) continue;
        Word w = out[i];
        w.letters.push_back(l);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

AlgebraicHeightReport algebraic_height(const Presentation& p, const std::vector<std::vector<Word>>& subgroups,
                                       const AlgebraicHeightOptions& options) {
  if (p.strategy != Strategy::FreeGroup)
    throw UnsupportedError("algebraic height needs exact pullbacks (free groups); use geometric mode");
  AlgebraicHeightReport rep;
  rep.L = options.L;
  for (const auto& gens : subgroups) rep.subgroups.push_back(CoreGraph::fold(p.alphabet, gens));

  // Cosets: identity cosets first (one per subgroup), then the others by
  // (representative shortlex, subgroup).
  std::vector<CosetRef> cosets;
  std::vector<CoreGraph> conjugates;
  for (std::size_t a = 0; a < rep.subgroups.size(); ++a) {
    cosets.push_back({a, Word{}});
    conjugates.push_back(rep.subgroups[a]);
  }
  std::map<std::pair<std::string, std::size_t>, bool> seen;
  struct Pending {
    Word rep;
    std::size_t subgroup;
  };
  std::vector<Pending> others;
  for (const Word& g : reduced_words_up_to(p.alphabet, options.L))
    for (std::size_t a = 0; a < rep.subgroups.size(); ++a) {
      const CoreGraph& H = rep.subgroups[a];
      if (!seen.emplace(std::make_pair(H.left_coset_key(g), a), true).second) continue;
      Word r = H.left_coset_representative(g);
      if (r.empty()) continue;
      others.push_back({std::move(r), a});
    }
  std::stable_sort(others.begin(), others.end(), [](const Pending& x, const Pending& y) {
    const auto c = shortlex_compare(x.rep, y.rep);
    return c != 0 ? c < 0 : x.subgroup < y.subgroup;
  });
  for (Pending& o : others) {
    conjugates.push_back(rep.subgroups[o.subgroup].conjugate(o.rep));
    cosets.push_back({o.subgroup, std::move(o.rep)});
  }
  rep.cosets_enumerated = cosets.size();

  struct Tuple {
    std::vector<std::size_t> members;
    CoreGraph meet;
  };
  std::vector<Tuple> frontier;
  auto record = [&](const Tuple& t, std::size_t level) {
    if (rep.witnesses.size() < level) rep.witnesses.resize(level);
    AlgebraicWitness w;
    for (std::size_t m : t.members) w.cosets.push_back(cosets[m]);
    w.intersection = t.meet;
    w.rank = t.meet.rank();
    w.element = t.meet.shortest_loop();
    rep.witnesses[level - 1].push_back(std::move(w));
  };
  for (std::size_t a = 0; a < rep.subgroups.size(); ++a) {
    Tuple t{{a}, rep.subgroups[a]};
    if (t.meet.rank() >= 1) {
      record(t, 1);
      frontier.push_back(std::move(t));
    }
  }
  rep.height = frontier.empty() ? 0 : 1;
  bool budget_hit = false;
  for (int level = 2; level <= options.n_max && !frontier.empty() && !budget_hit; ++level) {
    std::vector<Tuple> next;
    for (const Tuple& t : frontier) {
      for (std::size_t c = t.members.back() + 1; c < cosets.size(); ++c) {
        if (++rep.pullbacks > options.pullback_budget) {
          budget_hit = true;
          break;
        }
        CoreGraph meet = CoreGraph::pullback(t.meet, conjugates[c]);
        if (meet.rank() == 0) continue;
        Tuple u{t.members, std::move(meet)};
        u.members.push_back(c);
        record(u, static_cast<std::size_t>(level));
        next.push_back(std::move(u));
      }
      if (budget_hit) break;
    }
    if (!next.empty()) rep.height = level;
    frontier = std::move(next);
  }
  rep.at_bound = !frontier.empty() && !budget_hit;
  rep.exhaustive = frontier.empty() && !budget_hit;
  if (budget_hit) rep.note = "pullback budget exhausted; height is a lower bound";
  else if (rep.at_bound) rep.note = "infinite intersections persist at n_max; height is a lower bound";
  else rep.note = "complete for cosets with representatives of length <= " + std::to_string(options.L);
  return rep;
}

}  // namespace gglab
