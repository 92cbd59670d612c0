#pragma once

#include <string>

#include <json.hpp>

#include "gglab/electrics/embedding.hpp"
#include "gglab/electrics/horoball.hpp"
#include "gglab/graded/graded.hpp"
#include "gglab/paths/meetings.hpp"

namespace gglab {

using Json = nlohmann::json;  // keys sorted, so dumps are canonical

Json to_json(const Dyadic& x);
Json ball_to_json(const CayleyBall& ball);
Json graph_to_json(const MetricGraph& g);
/// Graph JSON plus {cones: [{piece, vertex}]}.
Json coned_to_json(const ConedSpace& cs);
Json horoball_to_json(const Horoballification& h);
/// Reads {vertices: [names] | count, edges: [[i, j, "len"]], meta}.
MetricGraph graph_from_json(const Json& j);

Json to_json(const DeltaReport& r);
Json to_json(const PsiTable& t);
Json to_json(const EmbeddingReport& r);
Json to_json(const DoubleElectrificationReport& r);
Json to_json(const MeetingReport& r, const MetricGraph& g);
Json to_json(const AlgebraicHeightReport& r);
Json to_json(const GeometricHeightReport& r, int radius);
Json to_json(const GradedVerdict& v);
Json to_json(const RoundtripRecord& r);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& content);

/// CSV tables with a commented header naming every column and its unit.
std::string psi_csv(const PsiTable& t);
std::string height_levels_csv(const GeometricHeightReport& r);
std::string graded_levels_csv(const GradedVerdict& v);

}  // namespace gglab
