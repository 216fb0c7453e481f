#include "planegap/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "planegap/error.hpp"
#include "planegap/faces.hpp"
#include "planegap/parallel.hpp"

namespace planegap {

namespace {

Length ClusterDiameter(const DistanceMatrix& metric, std::span<const int> members) {
  Length d = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) d = std::max(d, metric(members[i], members[j]));
  }
  return d;
}

// Submetric of the graph on `points`, from `distances` when given.
DistanceMatrix Submetric(const Graph& graph, std::span<const VertexId> points,
                         const DistanceMatrix* distances) {
  if (distances != nullptr) return distances->Restrict(points);
  DistanceMatrix out(static_cast<int>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ShortestPathTree spt = Dijkstra(graph, points[i]);
    for (std::size_t j = 0; j < points.size(); ++j) {
      out.at(static_cast<int>(i), static_cast<int>(j)) = spt.dist[points[j]];
    }
  }
  // Symmetrize against floating-point asymmetry of separate runs.
  for (int i = 0; i < out.size(); ++i) {
    for (int j = i + 1; j < out.size(); ++j) out.Set(i, j, std::min(out(i, j), out(j, i)));
  }
  return out;
}

Length EdgeBetween(const Graph& graph, VertexId u, VertexId v) {
  Length best = kInfinity;
  for (DartId d : graph.out_darts(u)) {
    if (graph.head(d) == v) best = std::min(best, graph.length(d));
  }
  return best;
}

}  // namespace

TreeSample FrtEmbed(const DistanceMatrix& metric, Rng& rng, std::span<const VertexId> points) {
  const int k = metric.size();
  std::vector<VertexId> names(points.begin(), points.end());
  if (names.empty()) {
    names.resize(k);
    std::iota(names.begin(), names.end(), 0);
  }
  if (static_cast<int>(names.size()) != k) Fail(ErrorCode::kBadParams, "point names do not match metric");
  TreeSample sample;
  if (k == 0) return sample;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (metric(i, j) == kInfinity) Fail(ErrorCode::kDisconnected, "metric has infinite distances");
    }
  }
  const double beta = rng.Uniform(1.0, 2.0);
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<int>(order));

  struct Cluster {
    int node;
    std::vector<int> members;
  };
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  const Length diameter = ClusterDiameter(metric, all);
  std::vector<Cluster> active;
  if (diameter == 0) {
    for (int i = 0; i < k; ++i) sample.Map(names[i], 0);
    return sample;
  }
  active.push_back({0, all});
  double radius = beta * std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(diameter))));
  std::vector<int> group_of_center(k, -1);
  std::vector<Length> height = {0.0};
  while (!active.empty()) {
    radius /= 2;
    std::vector<Cluster> next;
    for (Cluster& c : active) {
      std::vector<std::vector<int>> groups;
      std::vector<int> used_centers;
      for (int x : c.members) {
        for (int center : order) {
          if (metric(center, x) <= radius) {
            if (group_of_center[center] < 0) {
              group_of_center[center] = static_cast<int>(groups.size());
              groups.emplace_back();
              used_centers.push_back(center);
            }
            groups[group_of_center[center]].push_back(x);
            break;
          }
        }
      }
      for (int center : used_centers) group_of_center[center] = -1;
      if (groups.size() == 1) {
        next.push_back(std::move(c));
        continue;
      }
      // Largest distance between points of different children.
      std::vector<int> group_of(k, -1);
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        for (int x : groups[gi]) group_of[x] = static_cast<int>(gi);
      }
      Length separation = 0;
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        for (std::size_t j = i + 1; j < c.members.size(); ++j) {
          const int x = c.members[i];
          const int y = c.members[j];
          if (group_of[x] != group_of[y]) separation = std::max(separation, metric(x, y));
        }
      }
      height[c.node] = separation / 2;
      for (auto& g : groups) {
        const int node = sample.tree.AddNode(c.node, 0.0);
        height.push_back(0.0);
        if (ClusterDiameter(metric, g) == 0) {
          for (int x : g) sample.Map(names[x], node);
        } else {
          next.push_back({node, std::move(g)});
        }
      }
    }
    active = std::move(next);
  }
  // Ultrametric heights: a pair meeting at node C is 2 h(C) apart.
  for (int v = sample.tree.num_nodes() - 1; v > 0; --v) {
    height[sample.tree.parent(v)] = std::max(height[sample.tree.parent(v)], height[v]);
  }
  for (int v = 1; v < sample.tree.num_nodes(); ++v) {
    sample.tree.set_length(v, height[sample.tree.parent(v)] - height[v]);
  }
  sample.tree.Refresh();
  return sample;
}

TreeSample PathUnionEmbed(const Graph& graph, std::span<const std::vector<VertexId>> paths, Rng& rng,
                          const DistanceMatrix* distances) {
  if (paths.empty()) Fail(ErrorCode::kBadParams, "no paths given");
  const VertexId root = paths.front().back();
  std::vector<VertexId> points;
  for (const auto& path : paths) {
    if (path.empty() || path.back() != root) {
      Fail(ErrorCode::kNotShortestPath, "paths must share their final vertex");
    }
    Length walked = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) walked += EdgeBetween(graph, path[i], path[i + 1]);
    const Length shortest = distances ? (*distances)(path.front(), root)
                                      : Dijkstra(graph, path.front()).dist[root];
    if (!(walked <= shortest + 1e-9 * std::max(1.0, shortest))) {
      Fail(ErrorCode::kNotShortestPath, "path from " + std::to_string(path.front()) + " is not shortest");
    }
    points.insert(points.end(), path.begin(), path.end());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // A union that lies on its longest path is that path.
  const auto& longest = *std::max_element(paths.begin(), paths.end(),
                                          [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (longest.size() == points.size()) {
    TreeSample sample;
    int node = 0;
    sample.Map(longest.back(), 0);
    for (std::size_t i = longest.size() - 1; i > 0; --i) {
      node = sample.tree.AddNode(node, EdgeBetween(graph, longest[i], longest[i - 1]));
      sample.Map(longest[i - 1], node);
    }
    return sample;
  }
  return FrtEmbed(Submetric(graph, points, distances), rng, points);
}

bool IsOuterplanar(const PlaneGraph& graph) {
  const int n = graph.num_vertices();
  if (n <= 1) return true;
  const FaceSet faces = TraceFaces(graph);
  for (const Face& f : faces.faces) {
    if (static_cast<int>(f.vertices.size()) == n) return true;
  }
  return false;
}

TreeSample OuterplanarToTree(const PlaneGraph& plane, Rng& rng) {
  const Graph& g = plane.graph();
  const int n = g.num_vertices();
  TreeSample sample;
  if (n == 0) return sample;
  std::vector<int> comp;
  if (g.Components(comp) != 1) Fail(ErrorCode::kDisconnected, "graph must be connected");
  if (!IsOuterplanar(plane)) Fail(ErrorCode::kNotOuterplanar, "not every vertex lies on one face");

  std::vector<double> key(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) key[e] = rng.Exponential(g.edge(e).length);
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return key[a] > key[b]; });
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&uf](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<char> keep(g.num_edges(), 0);
  for (EdgeId e : order) {
    const int a = find(g.edge(e).u);
    const int b = find(g.edge(e).v);
    if (a == b) continue;
    uf[a] = b;
    keep[e] = 1;
  }
  std::vector<int> node(n, -1);
  std::vector<VertexId> queue = {0};
  node[0] = 0;
  sample.Map(0, 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexId v = queue[i];
    for (DartId d : g.out_darts(v)) {
      const VertexId w = g.head(d);
      if (!keep[EdgeOf(d)] || node[w] >= 0) continue;
      node[w] = sample.tree.AddNode(node[v], g.length(d));
      sample.Map(w, node[w]);
      queue.push_back(w);
    }
  }
  return sample;
}

TreeSample OsToTree(const PlaneGraph& graph, Rng& rng, const DistanceMatrix* distances) {
  const auto terminals = graph.terminals();
  if (terminals.empty()) Fail(ErrorCode::kEmptyTerminals, "instance has no terminals");
  if (ComputeFaceCover(graph, terminals).gamma != 1) {
    Fail(ErrorCode::kNotOsInstance, "terminals do not lie on a single face");
  }
  if (terminals.size() == 1) {
    TreeSample sample;
    sample.Map(terminals.front(), 0);
    return sample;
  }
  std::vector<int> comp;
  if (graph.graph().Components(comp) == 1 && IsOuterplanar(graph)) {
    const TreeSample full = OuterplanarToTree(graph, rng);
    TreeSample sample;
    sample.tree = full.tree;
    for (VertexId t : terminals) sample.Map(t, full.Node(t));
    return sample;
  }
  return FrtEmbed(Submetric(graph.graph(), terminals, distances), rng, terminals);
}

bool Dominates(const TreeSample& sample, const DistanceMatrix& metric, double tolerance) {
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    const VertexId x = sample.points[i];
    const auto dist = sample.tree.DistancesFrom(sample.Node(x));
    for (std::size_t j = i + 1; j < sample.points.size(); ++j) {
      const VertexId y = sample.points[j];
      if (dist[sample.Node(y)] < metric(x, y) - tolerance) return false;
    }
  }
  return true;
}

std::vector<std::pair<VertexId, VertexId>> PairsOf(std::span<const VertexId> points) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) out.emplace_back(points[i], points[j]);
  }
  return out;
}

StretchReport MeasureStretch(const TreeSampler& sampler, const DistanceMatrix& metric,
                             std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                             std::uint64_t seed, double tolerance) {
  auto fill = [&sampler](Rng& rng, std::span<const std::pair<VertexId, VertexId>> kept,
                         std::vector<Length>& out) {
    const TreeSample sample = sampler(rng);
    // Pairs grouped by first endpoint: one tree traversal per endpoint.
    std::vector<std::size_t> by_source(kept.size());
    std::iota(by_source.begin(), by_source.end(), 0);
    std::stable_sort(by_source.begin(), by_source.end(),
                     [&](std::size_t a, std::size_t b) { return kept[a].first < kept[b].first; });
    VertexId current = kNoVertex;
    std::vector<Length> from;
    for (std::size_t idx : by_source) {
      const auto [x, y] = kept[idx];
      if (x != current) {
        from = sample.tree.DistancesFrom(sample.Node(x));
        current = x;
      }
      out[idx] = from[sample.Node(y)];
    }
  };
  return MeasurePairStretch(fill, metric, pairs, samples, seed, tolerance);
}

StretchReport MeasurePairStretch(const PairDistanceFill& fill, const DistanceMatrix& metric,
                                 std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                                 std::uint64_t seed, double tolerance) {
  if (samples < 2) Fail(ErrorCode::kBadParams, "at least 2 samples are required");
  StretchReport report;
  report.samples = samples;
  std::vector<std::pair<VertexId, VertexId>> kept;
  for (auto [x, y] : pairs) {
    const Length d = metric(x, y);
    if (d > 0 && d < kInfinity) {
      kept.emplace_back(x, y);
      PairStretch p;
      p.x = x;
      p.y = y;
      p.distance = d;
      report.pairs.push_back(p);
    }
  }
  std::vector<RunningStats> tree_stats(kept.size()), stretch_stats(kept.size());
  constexpr long kBatch = 32;
  for (long start = 0; start < samples; start += kBatch) {
    const long count = std::min(kBatch, samples - start);
    std::vector<std::vector<double>> sampled(count);
    ParallelFor(static_cast<std::size_t>(count), [&](std::size_t b) {
      Rng rng(seed, static_cast<std::uint64_t>(start) + b);
      sampled[b].assign(kept.size(), 0.0);
      fill(rng, kept, sampled[b]);
    });
    for (long b = 0; b < count; ++b) {
      for (std::size_t i = 0; i < kept.size(); ++i) {
        const Length dt = sampled[b][i];
        const Length d = report.pairs[i].distance;
        if (!(dt >= d - tolerance)) {
          std::ostringstream msg;
          msg << "sample " << (start + b) << " contracts pair (" << kept[i].first << ", "
              << kept[i].second << "): " << dt << " < " << d;
          Fail(ErrorCode::kDominationViolation, msg.str());
        }
        tree_stats[i].Add(dt);
        stretch_stats[i].Add(dt / d);
        report.min_ratio = std::min(report.min_ratio, dt / d);
      }
    }
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    PairStretch& p = report.pairs[i];
    p.tree_distance = tree_stats[i].Summary();
    const MeanSummary s = stretch_stats[i].Summary();
    p.mean_stretch = s.mean;
    p.ci = s.ci;
    p.max_stretch = stretch_stats[i].max();
    if (p.mean_stretch > report.dist) {
      report.dist = p.mean_stretch;
      report.argmax = static_cast<int>(i);
      report.dist_ci = p.ci;
    }
  }
  return report;
}

}  // namespace planegap
