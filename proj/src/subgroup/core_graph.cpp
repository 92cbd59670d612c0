#include "gglab/subgroup/core_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "gglab/errors.hpp"

namespace gglab {

/// Labeled multigraph that is folded, cored and canonically renumbered.
class CoreGraphBuilder {
 public:
  explicit CoreGraphBuilder(const Alphabet& alphabet) : alphabet_(alphabet) {}

  int add_state() {
    out_.emplace_back();
    return static_cast<int>(out_.size() - 1);
  }
  void add_edge(int s, Letter l, int t) {
    out_[static_cast<std::size_t>(s)].push_back({l, t});
    out_[static_cast<std::size_t>(t)].push_back({alphabet_.inverse(l), s});
  }
  void add_path(int from, const Word& w, int to) {
    int cur = from;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int next = i + 1 == w.size() ? to : add_state();
      add_edge(cur, w[i], next);
      cur = next;
    }
    if (w.empty() && from != to) merge_requests_.push_back({from, to});
  }
  void add_graph(const CoreGraph& g, int offset) {
    for (std::size_t s = 0; s < g.state_count(); ++s)
      for (Letter l = 0; l < alphabet_.rank(); ++l) {
        const State t = g.transition(static_cast<State>(s), l);
        if (t != kNoState) add_edge(static_cast<int>(s) + offset, l, t + offset);
      }
  }

  struct Result {
    CoreGraph graph;
    std::vector<State> renumber;  // original state -> new state or kNoState
  };

  Result finish(int basepoint, bool prune_basepoint_stem = true) {
    fold();
    // Collapse to root states with deduplicated edges.
    const std::size_t n = out_.size();
    const std::size_t k = alphabet_.size();
    std::vector<State> table(n * k, kNoState);
    for (std::size_t s = 0; s < n; ++s) {
      if (find(static_cast<int>(s)) != static_cast<int>(s)) continue;
      for (auto [l, t] : out_[s]) table[s * k + l] = find(t);
    }
    const int base = find(basepoint);
    std::vector<bool> alive(n, false);
    for (std::size_t s = 0; s < n; ++s) alive[s] = find(static_cast<int>(s)) == static_cast<int>(s);
    if (prune_basepoint_stem) {
      // Remove degree-1 states other than the basepoint until none remain.
      std::vector<int> degree(n, 0);
      for (std::size_t s = 0; s < n; ++s)
        if (alive[s])
          for (std::size_t l = 0; l < k; ++l) degree[s] += table[s * k + l] != kNoState;
      std::vector<int> stack;
      for (std::size_t s = 0; s < n; ++s)
        if (alive[s] && static_cast<int>(s) != base && degree[s] <= 1) stack.push_back(static_cast<int>(s));
      while (!stack.empty()) {
        const auto s = static_cast<std::size_t>(stack.back());
        stack.pop_back();
        if (!alive[s]) continue;
        alive[s] = false;
        for (std::size_t l = 0; l < k; ++l) {
          const State t = table[s * k + l];
          if (t == kNoState) continue;
          const auto ti = static_cast<std::size_t>(t);
          table[ti * k + alphabet_.inverse(static_cast<Letter>(l))] = kNoState;
          table[s * k + l] = kNoState;
          if (--degree[ti] <= 1 && static_cast<int>(ti) != base && alive[ti]) stack.push_back(t);
        }
      }
    }
    // Breadth-first renumbering from the basepoint.
    std::vector<State> order_of(n, kNoState);
    std::vector<int> order{base};
    order_of[static_cast<std::size_t>(base)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto s = static_cast<std::size_t>(order[i]);
      for (std::size_t l = 0; l < k; ++l) {
        const State t = table[s * k + l];
        if (t != kNoState && order_of[static_cast<std::size_t>(t)] == kNoState) {
          order_of[static_cast<std::size_t>(t)] = static_cast<State>(order.size());
          order.push_back(t);
        }
      }
    }
    Result r;
    r.graph.alphabet_ = alphabet_;
    r.graph.state_count_ = order.size();
    r.graph.delta_.assign(order.size() * k, kNoState);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t l = 0; l < k; ++l) {
        const State t = table[static_cast<std::size_t>(order[i]) * k + l];
        if (t != kNoState) r.graph.delta_[i * k + l] = order_of[static_cast<std::size_t>(t)];
      }
    r.renumber.assign(n, kNoState);
    for (std::size_t s = 0; s < n; ++s) r.renumber[s] = order_of[static_cast<std::size_t>(find(static_cast<int>(s)))];
    return r;
  }

 private:
  int find(int s) {
    while (parent_[static_cast<std::size_t>(s)] != s) {
      parent_[static_cast<std::size_t>(s)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(s)])];
      s = parent_[static_cast<std::size_t>(s)];
    }
    return s;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    auto& from = out_[static_cast<std::size_t>(b)];
    auto& into = out_[static_cast<std::size_t>(a)];
    into.insert(into.end(), from.begin(), from.end());
    from.clear();
  }
  void fold() {
    parent_.resize(out_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    for (auto [a, b] : merge_requests_) unite(a, b);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < out_.size(); ++s) {
        if (find(static_cast<int>(s)) != static_cast<int>(s)) continue;
        std::map<Letter, int> seen;
        bool merged = false;
        for (auto [l, t] : out_[s]) {
          const int tt = find(t);
          auto [it, inserted] = seen.emplace(l, tt);
          if (!inserted && it->second != tt) {
            unite(it->second, tt);
            merged = true;
            break;
          }
        }
        if (merged) {
          changed = true;
          continue;
        }
        std::vector<std::pair<Letter, int>> clean;
        for (auto [l, t] : seen) clean.push_back({l, t});
        out_[s] = std::move(clean);
      }
    }
  }

  Alphabet alphabet_;
  std::vector<std::vector<std::pair<Letter, int>>> out_;
  std::vector<std::pair<int, int>> merge_requests_;
  std::vector<int> parent_;
};

CoreGraph CoreGraph::fold(const Alphabet& alphabet, const std::vector<Word>& generators) {
  CoreGraphBuilder b(alphabet);
  const int base = b.add_state();
  for (const Word& g : generators) {
    const Word r = free_reduce(g, alphabet);
    if (!r.empty()) b.add_path(base, r, base);
  }
  return b.finish(base).graph;
}

CoreGraph CoreGraph::pullback(const CoreGraph& a, const CoreGraph& b) {
  if (!(a.alphabet_ == b.alphabet_)) throw InputError("pullback of subgroups over different alphabets");
  const Alphabet& A = a.alphabet_;
  CoreGraphBuilder builder(A);
  std::map<std::pair<State, State>, int> id;
  std::deque<std::pair<State, State>> queue{{0, 0}};
  id[{0, 0}] = builder.add_state();
  while (!queue.empty()) {
    const auto [s, t] = queue.front();
    queue.pop_front();
    const int here = id[{s, t}];
    for (Letter l = 0; l < A.rank(); ++l) {
      const State s2 = a.transition(s, l);
      const State t2 = b.transition(t, l);
      if (s2 == kNoState || t2 == kNoState) continue;
      auto [it, inserted] = id.emplace(std::make_pair(s2, t2), 0);
      if (inserted) {
        it->second = builder.add_state();
        queue.push_back({s2, t2});
      }
      builder.add_edge(here, l, it->second);
    }
    // Inverse-letter transitions lead to states reached the same way.
    for (Letter l = static_cast<Letter>(A.rank()); l < A.size(); ++l) {
      const State s2 = a.transition(s, l);
      const State t2 = b.transition(t, l);
      if (s2 == kNoState || t2 == kNoState) continue;
      auto [it, inserted] = id.emplace(std::make_pair(s2, t2), 0);
      if (inserted) {
        it->second = builder.add_state();
        queue.push_back({s2, t2});
      }
    }
  }
  return builder.finish(0).graph;
}

std::size_t CoreGraph::edge_count() const {
  std::size_t e = 0;
  for (std::size_t s = 0; s < state_count_; ++s)
    for (Letter l = 0; l < alphabet_.rank(); ++l) e += transition(static_cast<State>(s), l) != kNoState;
  return e;
}

std::size_t CoreGraph::rank() const { return edge_count() + 1 - state_count_; }

CoreGraph::Reading CoreGraph::read(State from, const Word& w) const {
  State cur = from;
  std::size_t i = 0;
  for (; i < w.size(); ++i) {
    const State next = transition(cur, w[i]);
    if (next == kNoState) break;
    cur = next;
  }
  return {cur, i};
}

bool CoreGraph::accepts(const Word& w) const {
  const Word r = free_reduce(w, alphabet_);
  const Reading rd = read(0, r);
  return rd.consumed == r.size() && rd.state == 0;
}

CoreGraph CoreGraph::conjugate(const Word& g) const {
  CoreGraphBuilder b(alphabet_);
  for (std::size_t s = 0; s < state_count_; ++s) b.add_state();
  b.add_graph(*this, 0);
  const int p = b.add_state();
  b.add_path(p, free_reduce(g, alphabet_), 0);
  return b.finish(p).graph;
}

std::vector<Word> CoreGraph::basis() const {
  // Spanning tree from breadth-first search in letter order.
  const std::size_t k = alphabet_.size();
  std::vector<Word> to(state_count_);
  std::vector<bool> seen(state_count_, false);
  std::set<std::pair<State, Letter>> tree;
  std::deque<State> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < k; ++l) {
      const State t = transition(s, l);
      if (t == kNoState || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      to[static_cast<std::size_t>(t)] = to[static_cast<std::size_t>(s)];
      to[static_cast<std::size_t>(t)].letters.push_back(l);
      tree.insert({s, l});
      tree.insert({t, alphabet_.inverse(l)});
      queue.push_back(t);
    }
  }
  std::vector<Word> out;
  for (std::size_t s = 0; s < state_count_; ++s)
    for (Letter l = 0; l < alphabet_.rank(); ++l) {
      const State t = transition(static_cast<State>(s), l);
      if (t == kNoState || tree.count({static_cast<State>(s), l})) continue;
      Word w = to[s];
      w.letters.push_back(l);
      out.push_back(multiply(w, inverse(to[static_cast<std::size_t>(t)], alphabet_), alphabet_));
    }
  return out;
}

Word CoreGraph::shortest_loop() const {
  const std::size_t k = alphabet_.size();
  // Nodes (state, last letter) for non-backtracking paths; last = k at start.
  const std::size_t width = k + 1;
  std::vector<int> parent(state_count_ * width, -2);
  std::deque<int> queue;
  const int start = static_cast<int>(k);
  parent[static_cast<std::size_t>(start)] = -1;
  queue.push_back(start);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    const auto s = static_cast<State>(node / static_cast<int>(width));
    const auto last = static_cast<std::size_t>(node % static_cast<int>(width));
    for (Letter l = 0; l < k; ++l) {
      if (last < k && l == alphabet_.inverse(static_cast<Letter>(last))) continue;
      const State t = transition(s, l);
      if (t == kNoState) continue;
      if (t == 0) {
        Word w{{l}};
        for (int cur = node; parent[static_cast<std::size_t>(cur)] != -1; cur = parent[static_cast<std::size_t>(cur)])
          w.letters.push_back(static_cast<Letter>(cur % static_cast<int>(width)));
        std::reverse(w.letters.begin(), w.letters.end());
        return w;
      }
      const int next = static_cast<int>(static_cast<std::size_t>(t) * width + l);
      if (parent[static_cast<std::size_t>(next)] != -2) continue;
      parent[static_cast<std::size_t>(next)] = node;
      queue.push_back(next);
    }
  }
  return {};
}

Word CoreGraph::path_to(State target) const {
  const std::size_t k = alphabet_.size();
  std::vector<std::pair<State, Letter>> from(state_count_, {kNoState, 0});
  std::vector<bool> seen(state_count_, false);
  std::deque<State> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < k; ++l) {
      const State t = transition(s, l);
      if (t == kNoState || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      from[static_cast<std::size_t>(t)] = {s, l};
      queue.push_back(t);
    }
  }
  Word w;
  for (State cur = target; cur != 0; cur = from[static_cast<std::size_t>(cur)].first)
    w.letters.push_back(from[static_cast<std::size_t>(cur)].second);
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

std::string CoreGraph::signature() const {
  std::string s = std::to_string(state_count_) + ":";
  for (State t : delta_) s += std::to_string(t) + ",";
  return s;
}

std::string CoreGraph::conjugacy_signature() const {
  // Full core: prune every degree-1 state, basepoint included.
  const std::size_t k = alphabet_.size();
  std::vector<State> table = delta_;
  std::vector<int> degree(state_count_, 0);
  std::vector<bool> alive(state_count_, true);
  for (std::size_t s = 0; s < state_count_; ++s)
    for (std::size_t l = 0; l < k; ++l) degree[s] += table[s * k + l] != kNoState;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < state_count_; ++s)
    if (degree[s] <= 1) stack.push_back(s);
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    if (!alive[s]) continue;
    alive[s] = false;
    for (std::size_t l = 0; l < k; ++l) {
      const State t = table[s * k + l];
      if (t == kNoState) continue;
      const auto ti = static_cast<std::size_t>(t);
      table[ti * k + alphabet_.inverse(static_cast<Letter>(l))] = kNoState;
      table[s * k + l] = kNoState;
      if (--degree[ti] <= 1 && alive[ti]) stack.push_back(ti);
    }
  }
  std::string best;
  for (std::size_t root = 0; root < state_count_; ++root) {
    if (!alive[root]) continue;
    std::vector<State> order_of(state_count_, kNoState);
    std::vector<std::size_t> order{root};
    order_of[root] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t l = 0; l < k; ++l) {
        const State t = table[order[i] * k + l];
        if (t != kNoState && order_of[static_cast<std::size_t>(t)] == kNoState) {
          order_of[static_cast<std::size_t>(t)] = static_cast<State>(order.size());
          order.push_back(static_cast<std::size_t>(t));
        }
      }
    std::string sig = std::to_string(order.size()) + ":";
    for (std::size_t s : order)
      for (std::size_t l = 0; l < k; ++l) {
        const State t = table[s * k + l];
        sig += std::to_string(t == kNoState ? -1 : order_of[static_cast<std::size_t>(t)]) + ",";
      }
    if (best.empty() || sig < best) best = sig;
  }
  return best.empty() ? std::string("trivial") : best;
}

std::string CoreGraph::left_coset_key(const Word& w) const {
  const Word u = inverse(free_reduce(w, alphabet_), alphabet_);
  const Reading rd = read(0, u);
  std::string key = std::to_string(rd.state) + ":";
  for (std::size_t i = rd.consumed; i < u.size(); ++i) key.push_back(alphabet_.symbol(u[i]));
  return key;
}

Word CoreGraph::left_coset_representative(const Word& w) const {
  const Word u = inverse(free_reduce(w, alphabet_), alphabet_);
  const Reading rd = read(0, u);
  // Representative = (unread suffix)^-1 followed by a shortlex-least geodesic
  // from the reached state back to the basepoint.
  const std::size_t k = alphabet_.size();
  std::vector<int> dist(state_count_, -1);
  std::deque<State> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < k; ++l) {
      const State t = transition(s, l);
      if (t != kNoState && dist[static_cast<std::size_t>(t)] < 0) {
        dist[static_cast<std::size_t>(t)] = dist[static_cast<std::size_t>(s)] + 1;
        queue.push_back(t);
      }
    }
  }
  Word out;
  for (std::size_t i = u.size(); i > rd.consumed; --i) out.letters.push_back(alphabet_.inverse(u[i - 1]));
  State cur = rd.state;
  while (cur != 0) {
    for (Letter l = 0; l < k; ++l) {
      const State t = transition(cur, l);
      if (t != kNoState && dist[static_cast<std::size_t>(t)] == dist[static_cast<std::size_t>(cur)] - 1) {
        out.letters.push_back(l);
        cur = t;
        break;
      }
    }
  }
  return out;
}

Word double_coset_canonical(const CoreGraph& H, const Word& g) {
  const Alphabet& A = H.alphabet();
  CoreGraphBuilder b(A);
  const auto n = static_cast<int>(H.state_count());
  for (int s = 0; s < 2 * n; ++s) b.add_state();
  b.add_graph(H, 0);
  b.add_graph(H, n);
  b.add_path(0, free_reduce(g, A), n);
  const auto result = b.finish(0, false);
  const CoreGraph& G = result.graph;
  const State target = result.renumber[static_cast<std::size_t>(n)];
  // Distances to the target, then the lexicographically least geodesic.
  const std::size_t k = A.size();
  std::vector<int> dist(G.state_count(), -1);
  std::deque<State> queue{target};
  dist[static_cast<std::size_t>(target)] = 0;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < k; ++l) {
      const State t = G.transition(s, l);
      if (t != kNoState && dist[static_cast<std::size_t>(t)] < 0) {
        dist[static_cast<std::size_t>(t)] = dist[static_cast<std::size_t>(s)] + 1;
        queue.push_back(t);
      }
    }
  }
  Word out;
  State cur = 0;
  while (cur != target) {
    for (Letter l = 0; l < k; ++l) {
      const State t = G.transition(cur, l);
      if (t != kNoState && dist[static_cast<std::size_t>(t)] == dist[static_cast<std::size_t>(cur)] - 1) {
        out.letters.push_back(l);
        cur = t;
        break;
      }
    }
  }
  return out;
}

}  // namespace gglab
