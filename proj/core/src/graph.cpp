#include "planegap/graph.hpp"

#include <numeric>

#include "planegap/error.hpp"

namespace planegap {

Graph::Graph(int num_vertices) : out_darts_(num_vertices) {}

VertexId Graph::AddVertex() {
  out_darts_.emplace_back();
  return num_vertices() - 1;
}

EdgeId Graph::AddEdge(VertexId u, VertexId v, Length length) {
  if (!IsVertex(u) || !IsVertex(v)) {
    Fail(ErrorCode::kBadVertex, "edge endpoint out of range");
  }
  const auto e = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v, length});
  out_darts_[u].push_back(2 * e);
  out_darts_[v].push_back(2 * e + 1);
  return e;
}

Length Graph::TotalLength() const {
  return std::accumulate(edges_.begin(), edges_.end(), Length{0},
                         [](Length acc, const Edge& e) { return acc + e.length; });
}

int Graph::Components(std::vector<int>& component) const {
  component.assign(num_vertices(), -1);
  int count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < num_vertices(); ++s) {
    if (component[s] >= 0) continue;
    component[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (DartId d : out_darts_[x]) {
        VertexId y = head(d);
        if (component[y] < 0) {
          component[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  return count;
}

Graph Graph::Induced(std::span<const VertexId> keep,
                     std::vector<VertexId>* old_to_new) const {
  std::vector<VertexId> map(num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    map[keep[i]] = static_cast<VertexId>(i);
  }
  Graph sub(static_cast<int>(keep.size()));
  for (const Edge& e : edges_) {
    if (map[e.u] != kNoVertex && map[e.v] != kNoVertex) {
      sub.AddEdge(map[e.u], map[e.v], e.length);
    }
  }
  if (old_to_new != nullptr) *old_to_new = std::move(map);
  return sub;
}

}  // namespace planegap
