#include "gglab/subgroup/cosets.hpp"

#include <map>

#include "gglab/errors.hpp"

namespace gglab {

CosetFamily coset_pieces(const SubgroupModel& H, const CayleyBall& ball, const std::vector<Word>& reps) {
  CosetFamily f;
  const Alphabet& A = ball.alphabet();
  if (H.exact()) {
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const std::string key = H.coset_key(reps[i]);
      auto [it, inserted] = slot.emplace(key, i);
      if (!inserted)
        throw InputError("representatives " + element_name(A, reps[it->second]) + " and " +
                         element_name(A, reps[i]) + " lie in the same coset");
    }
    f.representatives = reps;
    f.pieces.assign(reps.size(), {});
    for (std::size_t v = 0; v < ball.size(); ++v) {
      auto it = slot.find(H.coset_key(ball.vertices[v]));
      if (it != slot.end()) f.pieces[it->second].push_back(static_cast<VertexId>(v));
    }
    return f;
  }
  const auto labels = H.coset_labels(ball);
  std::map<VertexId, std::size_t> slot;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const VertexId v = ball.find(reps[i]);
    if (v == kNoVertex) throw InputError("representative " + element_name(A, reps[i]) + " lies outside the ball");
    auto [it, inserted] = slot.emplace(labels[static_cast<std::size_t>(v)], i);
    if (!inserted)
      throw InputError("representatives " + element_name(A, reps[it->second]) + " and " + element_name(A, reps[i]) +
                       " lie in the same coset");
  }
  f.representatives = reps;
  f.pieces.assign(reps.size(), {});
  for (std::size_t v = 0; v < ball.size(); ++v) {
    auto it = slot.find(labels[v]);
    if (it != slot.end()) f.pieces[it->second].push_back(static_cast<VertexId>(v));
  }
  return f;
}

CosetFamily coset_pieces_auto(const SubgroupModel& H, const CayleyBall& ball, std::size_t min_points) {
  const auto labels = H.coset_labels(ball);
  std::map<VertexId, Piece> groups;
  for (std::size_t v = 0; v < ball.size(); ++v) groups[labels[v]].push_back(static_cast<VertexId>(v));
  CosetFamily f;
  for (auto& [label, piece] : groups) {
    if (piece.size() < std::max<std::size_t>(min_points, 1)) continue;
    f.representatives.push_back(ball.vertices[static_cast<std::size_t>(label)]);
    f.pieces.push_back(std::move(piece));
  }
  return f;
}

}  // namespace gglab
