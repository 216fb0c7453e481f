#include "planegap/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace planegap {

namespace {

std::int64_t ParseId(const nlohmann::json& value) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_string()) return std::stoll(value.get<std::string>());
  Fail(ErrorCode::kParseError, "vertex id must be an integer");
}

}  // namespace

PlaneGraph PlaneGraphFromJson(const nlohmann::json& doc) {
  try {
    std::vector<std::int64_t> labels;
    std::map<std::int64_t, VertexId> index;
    for (const auto& v : doc.at("vertices")) {
      const std::int64_t id = ParseId(v);
      if (!index.emplace(id, static_cast<VertexId>(labels.size())).second) {
        Fail(ErrorCode::kParseError, "duplicate vertex id " + std::to_string(id));
      }
      labels.push_back(id);
    }
    auto lookup = [&index](const nlohmann::json& v) {
      auto it = index.find(ParseId(v));
      if (it == index.end()) Fail(ErrorCode::kBadVertex, "unknown vertex " + v.dump());
      return it->second;
    };

    Graph g(static_cast<int>(labels.size()));
    if (doc.contains("edges")) {
      for (const auto& e : doc.at("edges")) {
        g.AddEdge(lookup(e.at("u")), lookup(e.at("v")),
                  e.value("len", 1.0));
      }
    }
    PlaneGraph graph(std::move(g));
    graph.set_labels(labels);

    if (doc.contains("rotation")) {
      for (const auto& [key, order] : doc.at("rotation").items()) {
        const VertexId v = lookup(nlohmann::json(key));
        std::vector<DartId> darts;
        std::vector<char> used(graph.graph().num_darts(), 0);
        for (const auto& entry : order) {
          DartId pick = kNoDart;
          if (entry.is_object()) {
            const VertexId w = lookup(entry.at("v"));
            const EdgeId e = entry.at("edge").get<EdgeId>();
            if (e >= 0 && e < graph.num_edges()) {
              for (DartId d : {2 * e, 2 * e + 1}) {
                if (!used[d] && graph.graph().tail(d) == v &&
                    graph.graph().head(d) == w) {
                  pick = d;
                  break;
                }
              }
            }
          } else {
            const VertexId w = lookup(entry);
            for (DartId d : graph.graph().out_darts(v)) {
              if (!used[d] && graph.graph().head(d) == w) {
                pick = d;
                break;
              }
            }
          }
          if (pick != kNoDart) used[pick] = 1;
          darts.push_back(pick);
        }
        graph.set_rotation(v, std::move(darts));
      }
    }

    if (doc.contains("terminals")) {
      std::vector<VertexId> terms;
      for (const auto& t : doc.at("terminals")) terms.push_back(lookup(t));
      graph.set_terminals(std::move(terms));
    }
    return graph;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, e.what());
  }
}

nlohmann::json ToJson(const PlaneGraph& graph) {
  const Graph& g = graph.graph();
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) doc["vertices"].push_back(graph.label(v));
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    doc["edges"].push_back(
        {{"u", graph.label(e.u)}, {"v", graph.label(e.v)}, {"len", e.length}});
  }
  nlohmann::json rotation = nlohmann::json::object();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<VertexId> heads;
    for (DartId d : g.out_darts(v)) heads.push_back(g.head(d));
    std::sort(heads.begin(), heads.end());
    const bool ambiguous =
        std::adjacent_find(heads.begin(), heads.end()) != heads.end();
    nlohmann::json order = nlohmann::json::array();
    for (DartId d : graph.rotation(v)) {
      if (d == kNoDart) continue;
      if (ambiguous) {
        order.push_back({{"v", graph.label(g.head(d))}, {"edge", EdgeOf(d)}});
      } else {
        order.push_back(graph.label(g.head(d)));
      }
    }
    rotation[std::to_string(graph.label(v))] = std::move(order);
  }
  doc["rotation"] = std::move(rotation);
  doc["terminals"] = nlohmann::json::array();
  for (VertexId t : graph.terminals()) doc["terminals"].push_back(graph.label(t));
  return doc;
}

std::string ToDot(const PlaneGraph& graph, const DotStyle& style) {
  const Graph& g = graph.graph();
  std::ostringstream out;
  out << "graph " << style.name << " {\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out << "  " << graph.label(v) << " [";
    std::vector<std::string> attrs;
    if (graph.IsTerminal(v)) attrs.push_back("shape=box");
    if (std::find(style.highlight_vertices.begin(), style.highlight_vertices.end(),
                  v) != style.highlight_vertices.end()) {
      attrs.push_back("color=red");
    }
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      out << (i ? "," : "") << attrs[i];
    }
    out << "];\n";
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    out << "  " << graph.label(edge.u) << " -- " << graph.label(edge.v)
        << " [label=\"" << edge.length << "\"";
    if (std::find(style.highlight_edges.begin(), style.highlight_edges.end(), e) !=
        style.highlight_edges.end()) {
      out << ",color=red,penwidth=2";
    }
    if (edge.length == 0) out << ",style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kParseError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kParseError, "cannot write " + path.string());
  out << text;
}

}  // namespace planegap
