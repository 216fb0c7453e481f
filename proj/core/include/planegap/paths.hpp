#pragma once

#include <span>
#include <utility>
#include <vector>

#include "planegap/graph.hpp"

namespace planegap {

struct ShortestPathTree {
  std::vector<Length> dist;
  // Dart entering each vertex on its chosen shortest path; kNoDart at sources
  // and unreachable vertices.
  std::vector<DartId> parent;

  // Vertices from the source to v (inclusive); empty if v is unreachable.
  std::vector<VertexId> PathTo(const Graph& graph, VertexId v) const;
};

// Dijkstra from one or more sources. Ties between equal-length routes go to
// the lexicographically smallest predecessor vertex, so the tree is
// deterministic.
ShortestPathTree Dijkstra(const Graph& graph, std::span<const VertexId> sources);
ShortestPathTree Dijkstra(const Graph& graph, VertexId source);

struct PathResult {
  Length length = 0;
  std::vector<VertexId> vertices;  // u first, v last
  std::vector<EdgeId> edges;
};

// Throws DISCONNECTED if v is unreachable from u.
PathResult ShortestPath(const Graph& graph, VertexId u, VertexId v);

// Dense symmetric distance table.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n, Length fill = kInfinity)
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {
    for (int i = 0; i < n; ++i) at(i, i) = 0;
  }

  static DistanceMatrix AllPairs(const Graph& graph);
  // Submetric on `points`, row i of the result is points[i].
  DistanceMatrix Restrict(std::span<const VertexId> points) const;

  int size() const { return n_; }
  Length operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  Length& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  void Set(int i, int j, Length d) {
    at(i, j) = d;
    at(j, i) = d;
  }

  Length Diameter() const;          // over finite entries
  Length MinPositive() const;       // smallest positive finite entry

 private:
  int n_ = 0;
  std::vector<Length> data_;
};

// All-pairs shortest-path distances, computed once and read-only afterwards.
using DistOracle = DistanceMatrix;

// max over u,v in A of d_{G[A]}(u,v) / d_G(u,v); pairs at distance 0 in both
// count as 1 and kInfinity is returned if G[A] separates a pair.
double Dilation(const Graph& graph, std::span<const VertexId> subset);

}  // namespace planegap
