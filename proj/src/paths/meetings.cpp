#include "gglab/paths/meetings.hpp"

#include <algorithm>
#include <cmath>

#include "gglab/errors.hpp"
#include "gglab/metric/geodesics.hpp"

namespace gglab {

double parse_ratio(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return std::stod(text);
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return num / den;
  } catch (const std::logic_error&) {
    throw InputError("cannot parse ratio '" + text + "'");
  }
}

MeetingReport detect_meetings(const MetricGraph& g, std::span<const VertexId> H, std::span<const VertexId> Y,
                              const MeetingParams& params, std::span<const VertexId> domain) {
  if (H.empty() || Y.empty()) throw DomainError("detect_meetings: empty set");
  if (!(params.Delta > Dyadic(0))) throw DomainError("detect_meetings: Delta must be positive");
  MeetingReport rep;
  rep.params = params;
  const bool small_delta = params.delta < Dyadic::fraction(1, 1);
  rep.rho = max(Dyadic(20) * params.delta, Dyadic(1));
  rep.slack = small_delta ? Dyadic(1) : Dyadic(2) * params.delta;
  rep.meta["separation_radius"] = "max(20 delta, 1)";
  rep.meta["slack"] = small_delta ? "1 step (delta < 1/2)" : "2 delta";
  rep.meta["clause_reading"] = "some perturbed point of x1 or of x2 is far from H or from Y";

  // Thresholds in half units.
  const double reach = params.eps * params.Delta.to_double();
  const double t = reach - rep.slack.to_double();
  const auto within = [](HalfUnits d, double limit) { return is_finite(d) && d / 2.0 <= limit + 1e-9; };
  const auto dH = distance_to_set(g, H);
  const auto dY = distance_to_set(g, Y);

  std::vector<VertexId> cand;
  const std::size_t n = domain.empty() ? g.size() : domain.size();
  for (std::size_t k = 0; k < n; ++k) {
    const VertexId v = domain.empty() ? static_cast<VertexId>(k) : domain[k];
    if (within(dH[static_cast<std::size_t>(v)], reach) && within(dY[static_cast<std::size_t>(v)], reach))
      cand.push_back(v);
  }
  std::sort(cand.begin(), cand.end());
  rep.candidates = cand.size();

  // Perturbed-point test per candidate.
  const auto rho_h = rep.rho.to_halves();
  std::vector<bool> close(cand.size(), false);
  if (t > 0) {
    for (std::size_t k = 0; k < cand.size(); ++k) {
      SearchOptions o;
      o.cutoff = rho_h;
      const auto ball = g.distances_from(cand[k], o);
      for (std::size_t p = 0; p < ball.size() && !close[k]; ++p)
        if (ball[p] == rho_h && dH[p] / 2.0 < t && dY[p] / 2.0 < t && is_finite(dH[p]) && is_finite(dY[p]))
          close[k] = true;
    }
  }

  const HalfUnits delta_h = static_cast<HalfUnits>(std::ceil(params.Delta.to_double() * 2.0 - 1e-9));
  struct Found {
    HalfUnits d;
    VertexId a, b;
  };
  std::vector<Found> found;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const auto row = g.row(cand[i]);
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      const HalfUnits d = (*row)[static_cast<std::size_t>(cand[j])];
      if (!is_finite(d) || d < delta_h) continue;
      if (close[i] && close[j]) continue;
      found.push_back({d, cand[i], cand[j]});
    }
  }
  rep.raw_pairs = found.size();
  std::stable_sort(found.begin(), found.end(), [](const Found& x, const Found& y) { return x.d > y.d; });
  // Keep pairs whose endpoints do not both lie on a geodesic between a longer pair.
  for (std::size_t k = 0; k < found.size(); ++k) {
    bool dominated = false;
    for (std::size_t m = 0; m < k && !dominated; ++m) {
      if (found[m].d <= found[k].d) break;
      const auto ra = g.row(found[m].a);
      const auto rb = g.row(found[m].b);
      const auto on = [&](VertexId x) {
        return (*ra)[static_cast<std::size_t>(x)] + (*rb)[static_cast<std::size_t>(x)] == found[m].d;
      };
      dominated = on(found[k].a) && on(found[k].b);
    }
    if (!dominated) rep.pairs.push_back({found[k].a, found[k].b});
  }
  std::sort(rep.pairs.begin(), rep.pairs.end());
  return rep;
}

}  // namespace gglab
