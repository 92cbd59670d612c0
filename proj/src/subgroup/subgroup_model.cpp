#include "gglab/subgroup/subgroup_model.hpp"

#include <numeric>
#include <unordered_map>

#include "gglab/errors.hpp"

namespace gglab {

std::string to_string(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::FreeCore: return "free-core";
    case SubgroupKind::Special: return "special";
    case SubgroupKind::Orbit: return "orbit";
  }
  return "unknown";
}

SubgroupModel SubgroupModel::make(const Presentation& p, std::vector<Word> generators) {
  SubgroupModel m;
  m.presentation_ = p;
  for (Word& g : generators) g = free_reduce(g, p.alphabet);
  std::erase_if(generators, [](const Word& g) { return g.empty(); });
  m.generators_ = std::move(generators);
  m.problem_ = std::make_shared<const WordProblem>(p);
  if (p.strategy == Strategy::FreeGroup) {
    m.kind_ = SubgroupKind::FreeCore;
    m.core_ = CoreGraph::fold(p.alphabet, m.generators_);
  } else if (p.strategy == Strategy::PartiallyCommutative &&
             std::all_of(m.generators_.begin(), m.generators_.end(), [](const Word& g) { return g.size() == 1; })) {
    m.kind_ = SubgroupKind::Special;
    m.special_letters_.assign(p.alphabet.rank(), false);
    for (const Word& g : m.generators_) m.special_letters_[p.alphabet.generator_of(g[0])] = true;
  } else {
    m.kind_ = SubgroupKind::Orbit;
  }
  return m;
}

SubgroupModel SubgroupModel::from_core(const Presentation& p, CoreGraph core) {
  if (p.strategy != Strategy::FreeGroup) throw UnsupportedError("core graphs model subgroups of free groups only");
  SubgroupModel m;
  m.presentation_ = p;
  m.kind_ = SubgroupKind::FreeCore;
  m.generators_ = core.basis();
  m.core_ = std::move(core);
  m.problem_ = std::make_shared<const WordProblem>(p);
  return m;
}

const CoreGraph& SubgroupModel::core() const {
  if (!core_) throw UnsupportedError("exact core graph requires a free-group presentation");
  return *core_;
}

Word SubgroupModel::special_reduce(const Word& w) const {
  // Strip generator letters of the subgroup that can be shuffled to the end.
  const Alphabet& A = presentation_.alphabet;
  std::vector<Letter> x = problem_->reduce(w).letters;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = x.size(); j-- > 0;) {
      if (!special_letters_[A.generator_of(x[j])]) continue;
      bool movable = true;
      for (std::size_t k = j + 1; k < x.size() && movable; ++k)
        movable = problem_->commute(A.generator_of(x[j]), A.generator_of(x[k]));
      if (movable) {
        x.erase(x.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  return problem_->reduce(Word(std::move(x)));
}

bool SubgroupModel::contains(const Word& w) const {
  switch (kind_) {
    case SubgroupKind::FreeCore: return core_->accepts(w);
    case SubgroupKind::Special: return special_reduce(w).empty();
    case SubgroupKind::Orbit: break;
  }
  throw UnsupportedError("membership is not decidable for orbit-modelled subgroups");
}

std::string SubgroupModel::coset_key(const Word& w) const {
  switch (kind_) {
    case SubgroupKind::FreeCore: return core_->left_coset_key(w);
    case SubgroupKind::Special: return presentation_.alphabet.format(special_reduce(w));
    case SubgroupKind::Orbit: break;
  }
  throw UnsupportedError("coset keys are not available for orbit-modelled subgroups");
}

std::vector<VertexId> SubgroupModel::coset_labels(const CayleyBall& ball) const {
  const std::size_t n = ball.size();
  std::vector<VertexId> label(n);
  if (exact()) {
    std::unordered_map<std::string, VertexId> first;
    for (std::size_t v = 0; v < n; ++v) {
      auto [it, inserted] = first.emplace(coset_key(ball.vertices[v]), static_cast<VertexId>(v));
      label[v] = it->second;
    }
    return label;
  }
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](VertexId v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (std::size_t v = 0; v < n; ++v)
    for (const Word& h : generators_) {
      const VertexId t = ball.walk(static_cast<VertexId>(v), h);
      if (t == kNoVertex) continue;
      VertexId a = find(static_cast<VertexId>(v));
      VertexId b = find(t);
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      parent[static_cast<std::size_t>(b)] = a;
    }
  for (std::size_t v = 0; v < n; ++v) label[v] = find(static_cast<VertexId>(v));
  return label;
}

}  // namespace gglab
