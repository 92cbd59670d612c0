#pragma once

#include <memory>

#include "gglab/group/cayley_ball.hpp"
#include "gglab/io/text_formats.hpp"
#include "gglab/subgroup/cosets.hpp"
#include "gglab/subgroup/subgroup_model.hpp"
#include "oracles.hpp"

namespace fx {

inline gglab::Presentation presentation(const std::string& name) {
  return gglab::load_presentation(oracle::fixture(name));
}

inline gglab::Presentation f2() { return presentation("f2.txt"); }

inline std::vector<gglab::Word> subgroup(const gglab::Presentation& p, const std::string& name) {
  return gglab::load_subgroup(oracle::fixture(name), p.alphabet);
}

inline std::shared_ptr<const gglab::CayleyBall> ball(const gglab::Presentation& p, int R) {
  return std::make_shared<const gglab::CayleyBall>(gglab::build_ball(p, R));
}

/// Ball vertices whose names spell powers of one letter, sorted.
inline std::vector<gglab::VertexId> axis(const gglab::CayleyBall& b, char letter) {
  std::vector<gglab::VertexId> out;
  for (std::size_t v = 0; v < b.size(); ++v) {
    const std::string n = b.name(static_cast<gglab::VertexId>(v));
    const char up = static_cast<char>(letter - 'a' + 'A');
    if (n == "1" || n.find_first_not_of(letter) == std::string::npos || n.find_first_not_of(up) == std::string::npos)
      out.push_back(static_cast<gglab::VertexId>(v));
  }
  return out;
}

/// Left cosets of a subgroup fixture meeting the ball in at least two points.
inline gglab::CosetFamily cosets(const gglab::Presentation& p, const gglab::CayleyBall& b, const std::string& sub) {
  return gglab::coset_pieces_auto(gglab::SubgroupModel::make(p, subgroup(p, sub)), b);
}

}  // namespace fx
