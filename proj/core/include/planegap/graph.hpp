#pragma once

#include <limits>
#include <span>
#include <vector>

namespace planegap {

using VertexId = int;
using EdgeId = int;
// Directed edge slot: edge e contributes dart 2e (u -> v) and dart 2e+1
// (v -> u). Self-loops contribute two darts at the same vertex.
using DartId = int;
using Length = double;

inline constexpr Length kInfinity = std::numeric_limits<Length>::infinity();
inline constexpr DartId kNoDart = -1;
inline constexpr VertexId kNoVertex = -1;

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Length length = 0;
};

constexpr DartId Twin(DartId d) { return d ^ 1; }
constexpr EdgeId EdgeOf(DartId d) { return d >> 1; }
constexpr DartId ForwardDart(EdgeId e) { return 2 * e; }

// Undirected multigraph with nonnegative edge lengths.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);

  int num_vertices() const { return static_cast<int>(out_darts_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_darts() const { return 2 * num_edges(); }

  VertexId AddVertex();
  EdgeId AddEdge(VertexId u, VertexId v, Length length);

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  void set_length(EdgeId e, Length length) { edges_[e].length = length; }
  Length length(DartId d) const { return edges_[EdgeOf(d)].length; }

  VertexId tail(DartId d) const {
    const Edge& e = edges_[EdgeOf(d)];
    return (d & 1) ? e.v : e.u;
  }
  VertexId head(DartId d) const { return tail(Twin(d)); }
  VertexId Opposite(EdgeId e, VertexId x) const {
    return edges_[e].u == x ? edges_[e].v : edges_[e].u;
  }

  // Darts leaving v, in edge insertion order.
  std::span<const DartId> out_darts(VertexId v) const { return out_darts_[v]; }
  int degree(VertexId v) const {
    return static_cast<int>(out_darts_[v].size());
  }

  bool IsVertex(VertexId v) const { return v >= 0 && v < num_vertices(); }
  Length TotalLength() const;

  // Connected component index per vertex; returns the number of components.
  int Components(std::vector<int>& component) const;

  // Subgraph induced on `keep` (in the given order). `old_to_new`, when
  // non-null, receives kNoVertex for dropped vertices.
  Graph Induced(std::span<const VertexId> keep,
                std::vector<VertexId>* old_to_new = nullptr) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<DartId>> out_darts_;
};

}  // namespace planegap
