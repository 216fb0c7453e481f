#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "planegap/plane_graph.hpp"

namespace planegap {

// {"vertices":[id...], "edges":[{"u":id,"v":id,"len":x}...],
//  "rotation":{"id":[neighbor ids in cyclic order]}, "terminals":[id...]}
// A rotation entry may also be {"v":id,"edge":k} to pin a parallel edge;
// the writer emits that form only at vertices with parallel edges or loops.
PlaneGraph PlaneGraphFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const PlaneGraph& graph);

struct DotStyle {
  std::vector<EdgeId> highlight_edges;
  std::vector<VertexId> highlight_vertices;
  std::string name = "G";
};
std::string ToDot(const PlaneGraph& graph, const DotStyle& style = {});

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace planegap
