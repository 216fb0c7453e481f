#include "planegap/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "planegap/error.hpp"

namespace planegap {

namespace {

std::vector<VertexId> SortedUnique(std::span<const VertexId> a, int n) {
  std::vector<VertexId> out(a.begin(), a.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) Fail(ErrorCode::kEmptyA, "A must be nonempty");
  for (VertexId v : out) {
    if (v < 0 || v >= n) Fail(ErrorCode::kBadVertex, "A contains an unknown vertex");
  }
  return out;
}

// d_{G^a}(a, .) over base vertex ids, where G^a = G[(V \ A) + a].
std::vector<Length> BranchDistancesFromHat(const Graph& g, const std::vector<int>& a_index, VertexId a) {
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (a_index[v] < 0 || v == a) keep.push_back(v);
  }
  std::vector<VertexId> old_to_new;
  const Graph branch = g.Induced(keep, &old_to_new);
  const ShortestPathTree spt = Dijkstra(branch, old_to_new[a]);
  std::vector<Length> out(g.num_vertices(), kInfinity);
  for (std::size_t i = 0; i < keep.size(); ++i) out[keep[i]] = spt.dist[i];
  return out;
}

}  // namespace

PeeledGraph BuildPeeled(const Graph& graph, std::span<const VertexId> a) {
  PeeledGraph p;
  const int n = graph.num_vertices();
  p.base_vertices = n;
  p.a_set = SortedUnique(a, n);
  p.a_index.assign(n, -1);
  p.rest_index.assign(n, -1);
  for (std::size_t i = 0; i < p.a_set.size(); ++i) p.a_index[p.a_set[i]] = static_cast<int>(i);
  for (VertexId v = 0; v < n; ++v) {
    if (p.a_index[v] < 0) {
      p.rest_index[v] = static_cast<int>(p.rest.size());
      p.rest.push_back(v);
    }
  }
  const int k = static_cast<int>(p.a_set.size());
  const int r = static_cast<int>(p.rest.size());
  p.graph = Graph(k + k * r);
  for (int i = 0; i < k; ++i) {
    p.origin.push_back(p.a_set[i]);
    p.branch.push_back(i);
  }
  for (int i = 0; i < k; ++i) {
    for (VertexId v : p.rest) {
      p.origin.push_back(v);
      p.branch.push_back(i);
    }
  }
  for (const Edge& e : graph.edges()) {
    const int iu = p.a_index[e.u];
    const int iv = p.a_index[e.v];
    if (iu >= 0 && iv >= 0) {
      p.graph.AddEdge(p.Hat(iu), p.Hat(iv), e.length);
    } else if (iu >= 0) {
      p.graph.AddEdge(p.Hat(iu), p.Copy(iu, e.v), e.length);
    } else if (iv >= 0) {
      p.graph.AddEdge(p.Copy(iv, e.u), p.Hat(iv), e.length);
    } else {
      for (int i = 0; i < k; ++i) p.graph.AddEdge(p.Copy(i, e.u), p.Copy(i, e.v), e.length);
    }
  }
  return p;
}

bool IsSelector(const PeeledGraph& peeled, const SelectorMap& psi) {
  if (static_cast<int>(psi.image.size()) != peeled.base_vertices) return false;
  for (VertexId v = 0; v < peeled.base_vertices; ++v) {
    const VertexId x = psi.image[v];
    if (x < 0 || x >= peeled.graph.num_vertices()) return false;
    if (peeled.origin[x] != v) return false;
    if (peeled.a_index[v] >= 0 && x != peeled.Hat(peeled.a_index[v])) return false;
    if (peeled.a_index[v] < 0 && peeled.IsHat(x)) return false;
  }
  return true;
}

PeeledMetric::PeeledMetric(const Graph& graph, std::span<const VertexId> a)
    : peeled_(BuildPeeled(graph, a)) {
  const int k = static_cast<int>(peeled_.a_set.size());
  const Graph core_graph = graph.Induced(peeled_.a_set);
  core_ = DistanceMatrix::AllPairs(core_graph);
  for (int i = 0; i < k; ++i) {
    const VertexId hat = peeled_.a_set[i];
    to_hat_.push_back(BranchDistancesFromHat(graph, peeled_.a_index, hat));
    std::vector<VertexId> keep = peeled_.rest;
    keep.push_back(hat);
    const DistanceMatrix full = DistanceMatrix::AllPairs(graph.Induced(keep));
    std::vector<VertexId> rows(peeled_.rest.size());
    for (std::size_t j = 0; j < rows.size(); ++j) rows[j] = static_cast<VertexId>(j);
    branch_.push_back(full.Restrict(rows));
  }
}

Length PeeledMetric::InBranch(int a, VertexId u, VertexId v) const {
  return branch_[a](peeled_.rest_index[u], peeled_.rest_index[v]);
}

Length PeeledMetric::Distance(VertexId x, VertexId y, const DistanceMatrix* core) const {
  const DistanceMatrix& c = core ? *core : core_;
  const bool hx = peeled_.IsHat(x);
  const bool hy = peeled_.IsHat(y);
  if (hx && hy) return c(x, y);
  if (hx) return c(x, peeled_.branch[y]) + ToHat(peeled_.branch[y], peeled_.origin[y]);
  if (hy) return c(y, peeled_.branch[x]) + ToHat(peeled_.branch[x], peeled_.origin[x]);
  const int a = peeled_.branch[x];
  const int b = peeled_.branch[y];
  if (a == b) return InBranch(a, peeled_.origin[x], peeled_.origin[y]);
  return ToHat(a, peeled_.origin[x]) + c(a, b) + ToHat(b, peeled_.origin[y]);
}

PeelSampler::PeelSampler(const Graph& h, std::span<const VertexId> a, PartitionScheme scheme)
    : peeled_(BuildPeeled(h, a)), scheme_(scheme) {
  const int n = h.num_vertices();
  const auto& in = peeled_.a_index;
  h_prime_ = Graph(n);
  for (const Edge& e : h.edges()) {
    if (in[e.u] < 0 || in[e.v] < 0) h_prime_.AddEdge(e.u, e.v, e.length);
  }
  {
    const ShortestPathTree spt = Dijkstra(h, peeled_.a_set.front());
    for (VertexId x : peeled_.a_set) {
      if (spt.dist[x] == kInfinity) Fail(ErrorCode::kInfiniteDilation, "A is not connected in H");
    }
  }
  metric_ = DistanceMatrix::AllPairs(h_prime_);
  const Length lo = metric_.MinPositive();
  const Length hi = metric_.Diameter();
  if (lo > 0 && lo < kInfinity && hi > 0) {
    for (int j = static_cast<int>(std::floor(std::log2(lo))); j <= static_cast<int>(std::ceil(std::log2(hi))); ++j) {
      scales_.push_back(std::ldexp(1.0, j));
    }
  } else {
    scales_.push_back(1.0);
  }

  // Components of H - A and the A-vertices next to each.
  component_.assign(n, -1);
  int count = 0;
  for (VertexId s : peeled_.rest) {
    if (component_[s] >= 0) continue;
    std::vector<VertexId> stack = {s};
    component_[s] = count;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (DartId d : h.out_darts(v)) {
        const VertexId w = h.head(d);
        if (in[w] < 0 && component_[w] < 0) {
          component_[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  adjacent_a_.resize(count);
  for (const Edge& e : h.edges()) {
    if (in[e.u] >= 0 && in[e.v] < 0) adjacent_a_[component_[e.v]].push_back(in[e.u]);
    if (in[e.v] >= 0 && in[e.u] < 0) adjacent_a_[component_[e.u]].push_back(in[e.v]);
  }
  for (auto& list : adjacent_a_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (list.empty()) Fail(ErrorCode::kDisconnected, "a component of H - A does not touch A");
  }
  for (VertexId x : peeled_.a_set) to_hat_.push_back(BranchDistancesFromHat(h, in, x));
  distance_to_a_.assign(n, 0.0);
  for (VertexId v : peeled_.rest) {
    Length t = kInfinity;
    for (const auto& row : to_hat_) t = std::min(t, row[v]);
    distance_to_a_[v] = t;
  }
}

SelectorMap PeelSampler::Sample(Rng& rng) const {
  // Scales 2^(k + offset) for one shared random offset; a vertex at distance
  // t from A uses the smallest scale >= 2t, so vertices near A are decided
  // by fine partitions.
  const double offset = rng.Uniform();
  std::map<int, std::vector<VertexId>> by_scale;
  constexpr int kAtA = std::numeric_limits<int>::min();
  for (VertexId v : peeled_.rest) {
    const Length t = distance_to_a_[v];
    const int k = t > 0 ? static_cast<int>(std::ceil(std::log2(2 * t) - offset)) : kAtA;
    by_scale[k].push_back(v);
  }
  SelectorMap psi;
  psi.image.assign(peeled_.base_vertices, kNoVertex);
  for (std::size_t i = 0; i < peeled_.a_set.size(); ++i) psi.image[peeled_.a_set[i]] = peeled_.Hat(static_cast<int>(i));
  auto assign = [&](const std::vector<VertexId>& members, int component) {
    int best = -1;
    Length best_distance = kInfinity;
    for (int a : adjacent_a_[component]) {
      Length d = kInfinity;
      for (VertexId v : members) d = std::min(d, to_hat_[a][v]);
      if (best < 0 || d < best_distance) {
        best = a;
        best_distance = d;
      }
    }
    for (VertexId v : members) psi.image[v] = peeled_.Copy(best, v);
  };
  for (const auto& [k, vertices] : by_scale) {
    if (k == kAtA) {
      for (VertexId v : vertices) assign({v}, component_[v]);
      continue;
    }
    const Length delta = std::ldexp(1.0, k) * std::exp2(offset);
    const Partition part = scheme_ == PartitionScheme::kPlanar
                               ? PlanarPartition(h_prime_, metric_, delta, rng)
                               : CkrPartition(metric_, delta, rng);
    std::map<std::pair<int, int>, std::vector<VertexId>> pieces;
    for (VertexId v : vertices) pieces[{part(v), component_[v]}].push_back(v);
    for (const auto& [key, members] : pieces) assign(members, key.second);
  }
  return psi;
}

SubstitutedGraph SubstituteTree(const PeeledGraph& peeled, const TreeSample& tree) {
  if (tree.points != peeled.a_set) Fail(ErrorCode::kVertexSetMismatch, "tree points differ from A");
  SubstitutedGraph out;
  const int k = static_cast<int>(peeled.a_set.size());
  out.tree_nodes = tree.tree.num_nodes();
  out.branch_offset = out.tree_nodes;
  out.graph = Graph(out.tree_nodes + peeled.graph.num_vertices() - k);
  for (int v = 1; v < out.tree_nodes; ++v) out.graph.AddEdge(tree.tree.parent(v), v, tree.tree.length(v));
  for (int i = 0; i < k; ++i) out.hat_node.push_back(tree.Node(peeled.a_set[i]));
  auto map = [&](VertexId x) {
    return peeled.IsHat(x) ? out.hat_node[x] : x - k + out.branch_offset;
  };
  for (const Edge& e : peeled.graph.edges()) {
    if (peeled.IsHat(e.u) && peeled.IsHat(e.v)) continue;
    out.graph.AddEdge(map(e.u), map(e.v), e.length);
  }
  return out;
}

ComposedDraw ComposedSampler::Sample(Rng& rng) const {
  Rng mu_rng = rng.Substream(0);
  Rng nu_rng = rng.Substream(1);
  return {mu_->Sample(mu_rng), nu_(nu_rng)};
}

Length ComposedDistance(const PeeledMetric& metric, const ComposedDraw& draw, VertexId u, VertexId v) {
  const PeeledGraph& p = metric.peeled();
  const VertexId x = draw.psi.image[u];
  const VertexId y = draw.psi.image[v];
  const int a = p.branch[x];
  const int b = p.branch[y];
  auto up = [&](VertexId z) { return p.IsHat(z) ? 0.0 : metric.ToHat(p.branch[z], p.origin[z]); };
  if (a == b && !p.IsHat(x) && !p.IsHat(y)) return metric.InBranch(a, u, v);
  return up(x) + draw.tree.Distance(p.a_set[a], p.a_set[b]) + up(y);
}

}  // namespace planegap
