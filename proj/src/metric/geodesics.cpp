#include "gglab/metric/geodesics.hpp"

#include <algorithm>
#include <cmath>

#include "gglab/errors.hpp"

namespace gglab {

GeodesicSet geodesic_interval(const MetricGraph& g, VertexId u, VertexId v) {
  const auto ru = g.row(u);
  const auto rv = g.row(v);
  const HalfUnits d = (*ru)[static_cast<std::size_t>(v)];
  if (!is_finite(d)) throw DomainError("geodesic_interval: endpoints are disconnected");
  GeodesicSet s{u, v, d, {}};
  for (std::size_t w = 0; w < g.size(); ++w) {
    const HalfUnits a = (*ru)[w];
    const HalfUnits b = (*rv)[w];
    if (is_finite(a) && is_finite(b) && a + b == d) s.interval.push_back(static_cast<VertexId>(w));
  }
  return s;
}

std::vector<VertexId> nearest_point_projection(const MetricGraph& g, std::span<const VertexId> B, VertexId x) {
  if (B.empty()) throw DomainError("nearest_point_projection: empty target set");
  const auto rx = g.row(x);
  HalfUnits best = kInfiniteHalves;
  for (VertexId b : B) best = std::min(best, (*rx)[static_cast<std::size_t>(b)]);
  if (!is_finite(best)) throw DomainError("nearest_point_projection: point not connected to the set");
  std::vector<VertexId> out;
  for (VertexId b : B)
    if ((*rx)[static_cast<std::size_t>(b)] == best) out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<HalfUnits> distance_to_set(const MetricGraph& g, std::span<const VertexId> B, HalfUnits cutoff) {
  SearchOptions o;
  o.cutoff = cutoff;
  return g.distances_from(B, o);
}

std::vector<VertexPair> all_pairs(std::span<const VertexId> points) {
  std::vector<VertexId> p(points.begin(), points.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  std::vector<VertexPair> out;
  out.reserve(p.size() * (p.size() > 0 ? p.size() - 1 : 0) / 2);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) out.emplace_back(p[i], p[j]);
  return out;
}

QuasiconvexityResult quasiconvexity_constant(const MetricGraph& g, std::span<const VertexId> Q,
                                             std::span<const VertexPair> pair_domain) {
  QuasiconvexityResult res;
  if (Q.empty()) throw DomainError("quasiconvexity_constant: empty set");
  const auto dQ = distance_to_set(g, Q);
  HalfUnits best = 0;
  for (const auto& [x, y] : pair_domain) {
    ++res.pairs_scanned;
    const auto rx = g.row(x);
    const auto ry = g.row(y);
    const HalfUnits d = (*rx)[static_cast<std::size_t>(y)];
    if (!is_finite(d)) continue;
    for (std::size_t w = 0; w < g.size(); ++w) {
      const HalfUnits a = (*rx)[w];
      if (!is_finite(a) || a > d) continue;
      const HalfUnits b = (*ry)[w];
      if (a + b != d) continue;
      if (dQ[w] > best || res.x == kNoVertex) {
        best = std::max(best, dQ[w]);
        res.x = x;
        res.y = y;
        res.w = static_cast<VertexId>(w);
      }
    }
  }
  res.constant = Dyadic::from_halves(best);
  return res;
}

SubsetMetric restricted_metric(const MetricGraph& g, std::span<const VertexId> Y) {
  SubsetMetric m;
  m.points.assign(Y.begin(), Y.end());
  const std::size_t k = m.points.size();
  m.dist.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = g.row(m.points[i]);
    for (std::size_t j = 0; j < k; ++j) m.dist[i * k + j] = (*r)[static_cast<std::size_t>(m.points[j])];
  }
  return m;
}

SubsetMetric coarse_path_metric(const MetricGraph& g, std::span<const VertexId> Y, Dyadic D) {
  if (D <= Dyadic(0)) throw DomainError("coarse_path_metric: mesh must be positive");
  const SubsetMetric base = restricted_metric(g, Y);
  const std::size_t k = base.points.size();
  const Dyadic d_halves = D * Dyadic(2);
  const HalfUnits mesh = d_halves.is_infinite() ? kInfiniteHalves
                                                 : static_cast<HalfUnits>(std::floor(d_halves.to_double()));
  MetricGraph aux(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const HalfUnits d = base.at(i, j);
      if (is_finite(d) && d <= mesh) aux.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j), d);
    }
  SubsetMetric out;
  out.points = base.points;
  out.dist.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = aux.distances_from(static_cast<VertexId>(i));
    std::copy(r.begin(), r.end(), out.dist.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return out;
}

Dyadic quarter_grid_lambda(HalfUnits d_half, HalfUnits e_half) {
  // Work in quarters: lambda = q/4. Conditions with real d, e:
  //   e <= lambda d + lambda  and  d <= lambda (e + lambda).
  const double d = d_half / 2.0;
  const double e = e_half / 2.0;
  std::int64_t q = 4;
  const auto ok = [&](std::int64_t qq) {
    const double l = static_cast<double>(qq) / 4.0;
    return e <= l * d + l + 1e-9 && d <= l * (e + l) + 1e-9;
  };
  // Both conditions are monotone in lambda; grow then bisect.
  std::int64_t hi = 4;
  while (!ok(hi)) hi *= 2;
  std::int64_t lo = hi / 2 < 4 ? 4 : hi / 2;
  if (ok(lo)) hi = lo;
  while (hi - lo > 1) {
    const std::int64_t mid = (lo + hi) / 2;
    if (ok(mid)) hi = mid; else lo = mid;
  }
  q = ok(lo) ? lo : hi;
  return Dyadic::fraction(q, 2);
}

UndistortionResult undistortion_check(const MetricGraph& g, std::span<const VertexId> Y, Dyadic D,
                                      Dyadic lambda_max) {
  UndistortionResult res;
  const SubsetMetric base = restricted_metric(g, Y);
  const SubsetMetric coarse = coarse_path_metric(g, Y, D);
  const std::size_t k = base.points.size();
  Dyadic lambda(1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const HalfUnits d = base.at(i, j);
      const HalfUnits e = coarse.at(i, j);
      if (!is_finite(e)) {
        res.ok = false;
        res.lambda_hat = Dyadic::infinity();
        res.witness = {base.points[i], base.points[j]};
        res.failure = "coarse path metric is disconnected";
        return res;
      }
      const Dyadic l = quarter_grid_lambda(d, e);
      if (l > lambda) {
        lambda = l;
        res.witness = {base.points[i], base.points[j]};
      }
    }
  res.lambda_hat = lambda;
  res.ok = lambda <= lambda_max;
  if (!res.ok) res.failure = "lambda exceeds the allowed maximum";
  return res;
}

}  // namespace gglab
