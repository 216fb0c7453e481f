#include "planegap/paths.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "planegap/error.hpp"

namespace planegap {

std::vector<VertexId> ShortestPathTree::PathTo(const Graph& graph,
                                               VertexId v) const {
  std::vector<VertexId> path;
  if (dist[v] == kInfinity) return path;
  for (VertexId x = v;;) {
    path.push_back(x);
    if (parent[x] == kNoDart) break;
    x = graph.tail(parent[x]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree Dijkstra(const Graph& graph, std::span<const VertexId> sources) {
  const int n = graph.num_vertices();
  ShortestPathTree tree;
  tree.dist.assign(n, kInfinity);
  tree.parent.assign(n, kNoDart);
  std::vector<char> done(n, 0);
  using Item = std::pair<Length, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (VertexId s : sources) {
    tree.dist[s] = 0;
    queue.emplace(0, s);
  }
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (done[x] || d > tree.dist[x]) continue;
    done[x] = 1;
    for (DartId out : graph.out_darts(x)) {
      const VertexId y = graph.head(out);
      if (done[y]) continue;
      const Length nd = d + graph.length(out);
      if (nd < tree.dist[y]) {
        tree.dist[y] = nd;
        tree.parent[y] = out;
        queue.emplace(nd, y);
      } else if (nd == tree.dist[y] && tree.parent[y] != kNoDart &&
                 x < graph.tail(tree.parent[y])) {
        tree.parent[y] = out;
      }
    }
  }
  return tree;
}

ShortestPathTree Dijkstra(const Graph& graph, VertexId source) {
  const VertexId sources[] = {source};
  return Dijkstra(graph, sources);
}

PathResult ShortestPath(const Graph& graph, VertexId u, VertexId v) {
  if (!graph.IsVertex(u) || !graph.IsVertex(v)) {
    Fail(ErrorCode::kBadVertex, "shortest_path endpoint out of range");
  }
  const ShortestPathTree tree = Dijkstra(graph, u);
  if (tree.dist[v] == kInfinity) {
    Fail(ErrorCode::kDisconnected, "no path between the requested vertices");
  }
  PathResult result;
  result.length = tree.dist[v];
  result.vertices = tree.PathTo(graph, v);
  for (VertexId x = v; tree.parent[x] != kNoDart; x = graph.tail(tree.parent[x])) {
    result.edges.push_back(EdgeOf(tree.parent[x]));
  }
  std::reverse(result.edges.begin(), result.edges.end());
  return result;
}

DistanceMatrix DistanceMatrix::AllPairs(const Graph& graph) {
  const int n = graph.num_vertices();
  DistanceMatrix m(n);
  for (VertexId s = 0; s < n; ++s) {
    const ShortestPathTree tree = Dijkstra(graph, s);
    for (VertexId t = 0; t < n; ++t) m.at(s, t) = tree.dist[t];
  }
  // Symmetrize so that floating-point summation order cannot break symmetry.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Length d = std::min(m(i, j), m(j, i));
      m.Set(i, j, d);
    }
  }
  return m;
}

DistanceMatrix DistanceMatrix::Restrict(std::span<const VertexId> points) const {
  const int k = static_cast<int>(points.size());
  DistanceMatrix sub(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) sub.at(i, j) = (*this)(points[i], points[j]);
  }
  return sub;
}

Length DistanceMatrix::Diameter() const {
  Length best = 0;
  for (Length d : data_) {
    if (d != kInfinity) best = std::max(best, d);
  }
  return best;
}

Length DistanceMatrix::MinPositive() const {
  Length best = kInfinity;
  for (Length d : data_) {
    if (d > 0 && d < best) best = d;
  }
  return best;
}

double Dilation(const Graph& graph, std::span<const VertexId> subset) {
  if (subset.empty()) Fail(ErrorCode::kBadParams, "dilation of an empty set");
  std::vector<VertexId> keep(subset.begin(), subset.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const Graph induced = graph.Induced(keep);
  double worst = 1.0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const ShortestPathTree ambient = Dijkstra(graph, keep[i]);
    const ShortestPathTree inner = Dijkstra(induced, static_cast<VertexId>(i));
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      const Length dg = ambient.dist[keep[j]];
      const Length da = inner.dist[j];
      if (da == kInfinity) return kInfinity;
      if (dg == 0) {
        if (da > 0) return kInfinity;
        continue;
      }
      worst = std::max(worst, da / dg);
    }
  }
  return worst;
}

}  // namespace planegap
