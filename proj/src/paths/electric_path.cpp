#include "gglab/paths/electric_path.hpp"

#include <algorithm>
#include <set>

#include "gglab/errors.hpp"

namespace gglab {

ElectricPath as_electric_path(const ConedSpace& cs, std::vector<VertexId> vertices) {
  ElectricPath p;
  p.vertices = std::move(vertices);
  const auto n = static_cast<VertexId>(cs.base().size());
  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    const VertexId v = p.vertices[k];
    if (v < n) continue;
    if (k == 0 || k + 1 == p.vertices.size()) throw DomainError("electric path must start and end at base vertices");
    const auto piece = static_cast<std::size_t>(v - n);
    p.cone_visits.push_back({piece, p.vertices[k - 1], p.vertices[k + 1]});
    if (!seen.insert(piece).second) p.backtracking = true;
  }
  return p;
}

ElectricPath electric_geodesic(const ConedSpace& cs, VertexId u, VertexId v) {
  const auto n = static_cast<VertexId>(cs.base().size());
  if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("electric_geodesic endpoints must be base vertices");
  return as_electric_path(cs, least_geodesic(cs.graph(), u, v));
}

AmbientPath deelectrify(const ElectricPath& path, const ConedSpace& cs) {
  AmbientPath out;
  const auto n = static_cast<VertexId>(cs.base().size());
  for (std::size_t k = 0; k < path.vertices.size(); ++k) {
    const VertexId v = path.vertices[k];
    if (v < n) {
      if (out.vertices.empty() || out.vertices.back() != v) out.vertices.push_back(v);
      continue;
    }
    const auto piece = static_cast<std::size_t>(v - n);
    const VertexId entry = path.vertices.at(k - 1);
    const VertexId exit = path.vertices.at(k + 1);
    std::vector<VertexId> seg;
    try {
      seg = least_geodesic(cs.base(), entry, exit);
    } catch (const DomainError&) {
      throw DomainError("cannot de-electrify: piece " + std::to_string(piece) +
                        " is disconnected in the base between its entry and exit");
    }
    const std::size_t begin = out.vertices.size() - 1;
    out.vertices.insert(out.vertices.end(), seg.begin() + 1, seg.end());
    out.replaced.push_back({piece, begin, out.vertices.size() - 1});
    ++k;  // exit already appended
  }
  return out;
}

QuasigeodesicConstants quasigeodesic_constants(std::span<const VertexId> path, const MetricGraph& base) {
  QuasigeodesicConstants q;
  std::vector<HalfUnits> arc(path.size(), 0);
  for (std::size_t k = 1; k < path.size(); ++k) {
    arc[k] = arc[k - 1] + path_length(base, path.subspan(k - 1, 2));
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto row = base.row(path[i]);
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      const HalfUnits d = (*row)[static_cast<std::size_t>(path[j])];
      // Real units: arc / max(d + 2, 1); in half units arc_h / max(d_h + 4, 2).
      const double ratio = static_cast<double>(arc[j] - arc[i]) / static_cast<double>(std::max(d + 4, 2));
      if (ratio > q.lambda) {
        q.lambda = ratio;
        q.i = i;
        q.j = j;
      }
    }
  }
  return q;
}

namespace {

struct Touch {
  VertexId entry = kNoVertex;
  VertexId exit = kNoVertex;
};

std::vector<Touch> touches(std::span<const VertexId> path, const ConedSpace& cs, HalfUnits eps) {
  std::vector<Touch> t(cs.piece_count());
  const auto n = static_cast<VertexId>(cs.base().size());
  for (VertexId v : path) {
    if (v >= n) continue;
    const auto row = cs.base().row(v);
    for (std::size_t i = 0; i < cs.piece_count(); ++i) {
      bool near = false;
      for (VertexId y : cs.family()[i])
        if ((*row)[static_cast<std::size_t>(y)] <= eps) {
          near = true;
          break;
        }
      if (!near) continue;
      if (t[i].entry == kNoVertex) t[i].entry = v;
      t[i].exit = v;
    }
  }
  return t;
}

}  // namespace

PenetrationReport penetration_diagnostics(const ElectricPath& beta, std::span<const VertexId> gamma,
                                          const ConedSpace& cs, Dyadic eps) {
  const auto eps_h = static_cast<HalfUnits>(eps.to_double() * 2.0 + 1e-9);
  const auto tb = touches(beta.vertices, cs, eps_h);
  const auto tg = touches(gamma, cs, eps_h);
  PenetrationReport rep;
  for (std::size_t i = 0; i < cs.piece_count(); ++i) {
    PenetrationRecord r;
    r.piece = i;
    r.in_beta = tb[i].entry != kNoVertex;
    r.in_gamma = tg[i].entry != kNoVertex;
    if (!r.in_beta && !r.in_gamma) continue;
    r.beta_entry = tb[i].entry;
    r.beta_exit = tb[i].exit;
    r.gamma_entry = tg[i].entry;
    r.gamma_exit = tg[i].exit;
    if (r.in_beta && r.in_gamma) {
      r.entry_offset = Dyadic::from_halves(cs.d_base(r.beta_entry, r.gamma_entry));
      r.exit_offset = Dyadic::from_halves(cs.d_base(r.beta_exit, r.gamma_exit));
      rep.max_entry_offset = max(rep.max_entry_offset, r.entry_offset);
      rep.max_exit_offset = max(rep.max_exit_offset, r.exit_offset);
    } else {
      const Touch& t = r.in_beta ? tb[i] : tg[i];
      r.travel = Dyadic::from_halves(cs.d_base(t.entry, t.exit));
      rep.max_travel = max(rep.max_travel, r.travel);
    }
    rep.pieces.push_back(r);
  }
  return rep;
}

}  // namespace gglab
