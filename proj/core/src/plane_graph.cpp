#include "planegap/plane_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "planegap/faces.hpp"

namespace planegap {

PlaneGraph::PlaneGraph(Graph graph) : graph_(std::move(graph)) {
  const int n = graph_.num_vertices();
  rotation_.resize(n);
  position_.assign(graph_.num_darts(), -1);
  is_terminal_.assign(n, 0);
  labels_.resize(n);
  std::iota(labels_.begin(), labels_.end(), std::int64_t{0});
  for (VertexId v = 0; v < n; ++v) {
    auto darts = graph_.out_darts(v);
    rotation_[v].assign(darts.begin(), darts.end());
    Reindex(v);
  }
}

VertexId PlaneGraph::AddVertex() {
  const VertexId v = graph_.AddVertex();
  rotation_.emplace_back();
  is_terminal_.push_back(0);
  labels_.push_back(labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end()) + 1);
  return v;
}

EdgeId PlaneGraph::AddEdge(VertexId u, VertexId v, Length length) {
  const EdgeId e = graph_.AddEdge(u, v, length);
  position_.resize(graph_.num_darts(), -1);
  rotation_[u].push_back(2 * e);
  Reindex(u);
  rotation_[v].push_back(2 * e + 1);
  Reindex(v);
  return e;
}

void PlaneGraph::Reindex(VertexId v) {
  for (std::size_t i = 0; i < rotation_[v].size(); ++i) {
    DartId d = rotation_[v][i];
    if (d >= 0 && d < static_cast<DartId>(position_.size())) {
      position_[d] = static_cast<int>(i);
    }
  }
}

void PlaneGraph::set_rotation(VertexId v, std::vector<DartId> order) {
  for (DartId d : rotation_[v]) {
    if (d >= 0 && d < static_cast<DartId>(position_.size())) position_[d] = -1;
  }
  rotation_[v] = std::move(order);
  Reindex(v);
}

bool PlaneGraph::SetRotationFromNeighbors(VertexId v,
                                          std::span<const VertexId> order) {
  std::vector<char> used(graph_.num_darts(), 0);
  std::vector<DartId> darts;
  bool ok = true;
  for (VertexId w : order) {
    DartId pick = kNoDart;
    for (DartId d : graph_.out_darts(v)) {
      if (!used[d] && graph_.head(d) == w) {
        pick = d;
        break;
      }
    }
    if (pick == kNoDart) {
      ok = false;
    } else {
      used[pick] = 1;
    }
    darts.push_back(pick);
  }
  set_rotation(v, std::move(darts));
  return ok && static_cast<int>(order.size()) == graph_.degree(v);
}

DartId PlaneGraph::RotationNext(DartId d) const {
  const auto& rot = rotation_[graph_.tail(d)];
  const int i = position_[d];
  return rot[(i + 1) % rot.size()];
}

DartId PlaneGraph::RotationPrev(DartId d) const {
  const auto& rot = rotation_[graph_.tail(d)];
  const int i = position_[d];
  return rot[(i + rot.size() - 1) % rot.size()];
}

void PlaneGraph::set_terminals(std::vector<VertexId> terminals) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()),
                  terminals.end());
  for (VertexId t : terminals) {
    if (!graph_.IsVertex(t)) Fail(ErrorCode::kBadVertex, "terminal out of range");
  }
  terminals_ = std::move(terminals);
  is_terminal_.assign(graph_.num_vertices(), 0);
  for (VertexId t : terminals_) is_terminal_[t] = 1;
}

bool PlaneGraph::IsTerminal(VertexId v) const {
  return v >= 0 && v < static_cast<VertexId>(is_terminal_.size()) &&
         is_terminal_[v] != 0;
}

void PlaneGraph::set_labels(std::vector<std::int64_t> labels) {
  labels_ = std::move(labels);
}

bool PlaneGraph::RotationIsConsistent() const {
  std::vector<char> seen(graph_.num_darts(), 0);
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (static_cast<int>(rotation_[v].size()) != graph_.degree(v)) return false;
    for (DartId d : rotation_[v]) {
      if (d < 0 || d >= graph_.num_darts()) return false;
      if (graph_.tail(d) != v || seen[d]) return false;
      seen[d] = 1;
    }
  }
  return true;
}

bool ValidationReport::Has(ErrorCode code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

ValidationReport Validate(const PlaneGraph& graph) {
  ValidationReport report;
  const Graph& g = graph.graph();
  auto add = [&report](ErrorCode code, std::string message) {
    report.ok = false;
    report.violations.push_back({code, std::move(message)});
  };

  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Length len = g.edge(e).length;
    if (!(len >= 0) || !std::isfinite(len)) {
      add(ErrorCode::kNegativeLength,
          "edge " + std::to_string(e) + " has length " + std::to_string(len));
    }
  }

  bool rotation_ok = true;
  std::vector<char> seen(g.num_darts(), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto rot = graph.rotation(v);
    bool vertex_ok = static_cast<int>(rot.size()) == g.degree(v);
    for (DartId d : rot) {
      if (d < 0 || d >= g.num_darts() || g.tail(d) != v || seen[d]) {
        vertex_ok = false;
        continue;
      }
      seen[d] = 1;
    }
    if (!vertex_ok) {
      rotation_ok = false;
      add(ErrorCode::kRotationMismatch,
          "rotation at vertex " + std::to_string(graph.label(v)) +
              " is not a permutation of its incident edges");
    }
  }

  std::vector<int> component;
  report.num_components = g.Components(component);

  if (rotation_ok) {
    const FaceSet faces = TraceFaces(graph);
    report.num_faces = static_cast<int>(faces.faces.size());
    const int c = report.num_components;
    std::vector<long> chi(c, 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) ++chi[component[v]];
    for (const Edge& e : g.edges()) --chi[component[e.u]];
    for (const Face& f : faces.faces) ++chi[component[f.walk.front()]];
    for (int i = 0; i < c; ++i) {
      if (chi[i] != 2) {
        add(ErrorCode::kEulerViolation,
            "component " + std::to_string(i) + " has Euler characteristic " +
                std::to_string(chi[i]));
      }
    }
  }
  return report;
}

void RequireValid(const PlaneGraph& graph) {
  const ValidationReport report = Validate(graph);
  if (!report.ok) {
    const Violation& first = report.violations.front();
    Fail(first.code, first.message);
  }
}

void SetRotationFromCoordinates(PlaneGraph& graph, std::span<const double> x,
                                std::span<const double> y) {
  const Graph& g = graph.graph();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto out = g.out_darts(v);
    std::vector<DartId> darts(out.begin(), out.end());
    std::stable_sort(darts.begin(), darts.end(), [&](DartId a, DartId b) {
      const VertexId ha = g.head(a);
      const VertexId hb = g.head(b);
      return std::atan2(y[ha] - y[v], x[ha] - x[v]) <
             std::atan2(y[hb] - y[v], x[hb] - x[v]);
    });
    graph.set_rotation(v, std::move(darts));
  }
}

}  // namespace planegap
