#include "planegap/flowcut.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "planegap/error.hpp"
#include "planegap/graph_io.hpp"
#include "planegap/parallel.hpp"

namespace planegap {

FlowNetwork::FlowNetwork(PlaneGraph graph)
    : plane_(std::move(graph)), capacity_(plane_.graph().num_edges(), 1.0) {}

void FlowNetwork::set_capacity(EdgeId e, double c) {
  if (!(c >= 0) || !std::isfinite(c)) Fail(ErrorCode::kBadParams, "capacity must be finite and nonnegative");
  capacity_.at(e) = c;
}

void FlowNetwork::AddDemand(VertexId s, VertexId t, double amount) {
  if (!plane_.graph().IsVertex(s) || !plane_.graph().IsVertex(t)) Fail(ErrorCode::kBadVertex, "demand endpoint");
  if (s == t) return;
  if (!(amount >= 0) || !std::isfinite(amount)) Fail(ErrorCode::kBadParams, "demand must be finite and nonnegative");
  if (s > t) std::swap(s, t);
  for (Demand& d : demands_) {
    if (d.s == s && d.t == t) {
      d.amount += amount;
      return;
    }
  }
  demands_.push_back({s, t, amount});
}

double FlowNetwork::TotalDemand() const {
  double total = 0;
  for (const Demand& d : demands_) total += d.amount;
  return total;
}

FlowNetwork FlowNetworkFromJson(const nlohmann::json& doc) {
  FlowNetwork net(PlaneGraphFromJson(doc));
  std::map<std::int64_t, VertexId> by_label;
  for (VertexId v = 0; v < net.num_vertices(); ++v) by_label[net.plane().label(v)] = v;
  auto vertex = [&](const nlohmann::json& j) {
    auto it = by_label.find(j.get<std::int64_t>());
    if (it == by_label.end()) Fail(ErrorCode::kBadVertex, "unknown vertex label in demand");
    return it->second;
  };
  try {
    if (doc.contains("capacities")) {
      for (const auto& [key, value] : doc.at("capacities").items()) {
        const EdgeId e = std::stoi(key);
        if (e < 0 || e >= net.graph().num_edges()) Fail(ErrorCode::kParseError, "capacity for unknown edge " + key);
        net.set_capacity(e, value.get<double>());
      }
    }
    if (doc.contains("demands")) {
      for (const auto& d : doc.at("demands")) net.AddDemand(vertex(d.at("s")), vertex(d.at("t")), d.at("d").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, e.what());
  } catch (const std::invalid_argument&) {
    Fail(ErrorCode::kParseError, "capacity keys must be edge ids");
  }
  return net;
}

nlohmann::json ToJson(const FlowNetwork& net) {
  nlohmann::json doc = ToJson(net.plane());
  nlohmann::json caps = nlohmann::json::object();
  for (EdgeId e = 0; e < net.graph().num_edges(); ++e) caps[std::to_string(e)] = net.capacity(e);
  doc["capacities"] = std::move(caps);
  nlohmann::json demands = nlohmann::json::array();
  for (const Demand& d : net.demands()) {
    demands.push_back({{"s", net.plane().label(d.s)}, {"t", net.plane().label(d.t)}, {"d", d.amount}});
  }
  doc["demands"] = std::move(demands);
  return doc;
}

namespace {

void Evaluate(const FlowNetwork& net, const std::vector<char>& in_s, double& cap, double& dem) {
  cap = 0;
  dem = 0;
  const Graph& g = net.graph();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (in_s[g.edge(e).u] != in_s[g.edge(e).v]) cap += net.capacity(e);
  }
  for (const Demand& d : net.demands()) {
    if (in_s[d.s] != in_s[d.t]) dem += d.amount;
  }
}

bool Sparser(double cap_a, double dem_a, double cap_b, double dem_b) {
  return cap_a * dem_b < cap_b * dem_a;
}

}  // namespace

CutResult CutSparsity(const FlowNetwork& net, std::span<const VertexId> side) {
  std::vector<char> in_s(net.num_vertices(), 0);
  for (VertexId v : side) {
    if (!net.graph().IsVertex(v)) Fail(ErrorCode::kBadVertex, "cut side contains an unknown vertex");
    in_s[v] = 1;
  }
  CutResult r;
  Evaluate(net, in_s, r.capacity, r.demand);
  if (!(r.demand > 0)) Fail(ErrorCode::kNoSeparatedDemand, "cut separates no demand");
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (in_s[v]) r.side.push_back(v);
  }
  r.sparsity = r.capacity / r.demand;
  return r;
}

CutResult SparsestCutBruteForce(const FlowNetwork& net) {
  const int n = net.num_vertices();
  if (n > 20) Fail(ErrorCode::kTooLarge, "brute force is limited to 20 vertices");
  if (n < 2) Fail(ErrorCode::kNoSeparatedDemand, "no proper cut exists");
  const Graph& g = net.graph();
  std::vector<std::pair<int, int>> edges;
  std::vector<double> caps;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    edges.emplace_back(g.edge(e).u, g.edge(e).v);
    caps.push_back(net.capacity(e));
  }
  // Vertex n-1 always lies outside S, so each cut is visited once.
  const std::uint32_t total = (1u << (n - 1));
  const std::size_t chunks = std::min<std::size_t>(64, total);
  struct Best {
    std::uint32_t mask = 0;
    double cap = 0;
    double dem = 0;
  };
  std::vector<Best> best(chunks);
  ParallelFor(chunks, [&](std::size_t c) {
    const std::uint32_t lo = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(total * c / chunks));
    const std::uint32_t hi = static_cast<std::uint32_t>(total * (c + 1) / chunks);
    Best b;
    for (std::uint32_t mask = lo; mask < hi; ++mask) {
      double dem = 0;
      for (const Demand& d : net.demands()) {
        if (((mask >> d.s) ^ (mask >> d.t)) & 1u) dem += d.amount;
      }
      if (!(dem > 0)) continue;
      double cap = 0;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (((mask >> edges[i].first) ^ (mask >> edges[i].second)) & 1u) cap += caps[i];
      }
      if (b.mask == 0 || Sparser(cap, dem, b.cap, b.dem)) b = {mask, cap, dem};
    }
    best[c] = b;
  });
  Best winner;
  for (const Best& b : best) {
    if (b.mask != 0 && (winner.mask == 0 || Sparser(b.cap, b.dem, winner.cap, winner.dem))) winner = b;
  }
  if (winner.mask == 0) Fail(ErrorCode::kNoSeparatedDemand, "no cut separates a demand");
  CutResult r;
  for (int v = 0; v < n; ++v) {
    if ((winner.mask >> v) & 1u) r.side.push_back(v);
  }
  r.capacity = winner.cap;
  r.demand = winner.dem;
  r.sparsity = winner.cap / winner.dem;
  return r;
}

namespace {

struct ShortestPath {
  std::vector<DartId> darts;  // s -> t
  double length = 0;
};

// Dijkstra on dual lengths over edges with positive capacity.
void Distances(const Graph& g, const std::vector<double>& len, const std::vector<char>& usable, VertexId s,
               std::vector<double>& dist, std::vector<DartId>& parent) {
  const int n = g.num_vertices();
  dist.assign(n, kInfinity);
  parent.assign(n, kNoDart);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0;
  heap.push({0, s});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (DartId e : g.out_darts(v)) {
      if (!usable[EdgeOf(e)]) continue;
      const VertexId w = g.head(e);
      const double nd = d + len[EdgeOf(e)];
      if (nd < dist[w]) {
        dist[w] = nd;
        parent[w] = e;
        heap.push({nd, w});
      }
    }
  }
}

}  // namespace

FlowResult ConcurrentFlow(const FlowNetwork& net, double epsilon) {
  if (!(epsilon > 0 && epsilon < 0.5)) Fail(ErrorCode::kBadParams, "epsilon must lie in (0, 0.5)");
  const Graph& g = net.graph();
  const int m = g.num_edges();
  std::vector<int> commodities;
  for (std::size_t j = 0; j < net.demands().size(); ++j) {
    if (net.demands()[j].amount > 0) commodities.push_back(static_cast<int>(j));
  }
  if (commodities.empty()) Fail(ErrorCode::kZeroDemand, "all demands are zero");
  std::vector<char> usable(m);
  for (EdgeId e = 0; e < m; ++e) usable[e] = net.capacity(e) > 0 && g.edge(e).u != g.edge(e).v;
  {
    Graph support(g.num_vertices());
    for (EdgeId e = 0; e < m; ++e) {
      if (usable[e]) support.AddEdge(g.edge(e).u, g.edge(e).v, 1);
    }
    std::vector<int> comp;
    support.Components(comp);
    for (int j : commodities) {
      const Demand& d = net.demands()[j];
      if (comp[d.s] != comp[d.t]) {
        Fail(ErrorCode::kDisconnectedDemand, "demand between " + std::to_string(d.s) + " and " +
                                                 std::to_string(d.t) + " cannot be routed");
      }
    }
  }

  const double step = epsilon / 4;
  std::vector<double> len(m, 0.0);
  for (EdgeId e = 0; e < m; ++e) len[e] = usable[e] ? 1.0 / net.capacity(e) : 0.0;
  std::vector<double> load(m, 0.0);
  const std::size_t k = net.demands().size();
  std::vector<std::vector<double>> flow(k, std::vector<double>(m, 0.0));

  FlowResult result;
  result.upper_bound = kInfinity;
  std::vector<double> dist;
  std::vector<DartId> parent;
  constexpr int kMaxPhases = 200000;
  for (int phase = 1; phase <= kMaxPhases; ++phase) {
    for (int j : commodities) {
      const Demand& d = net.demands()[j];
      double remaining = d.amount;
      while (remaining > 1e-12 * d.amount) {
        Distances(g, len, usable, d.s, dist, parent);
        double bottleneck = kInfinity;
        for (VertexId v = d.t; v != d.s; v = g.tail(parent[v])) bottleneck = std::min(bottleneck, net.capacity(EdgeOf(parent[v])));
        const double u = std::min(remaining, bottleneck);
        for (VertexId v = d.t; v != d.s; v = g.tail(parent[v])) {
          const DartId dart = parent[v];
          const EdgeId e = EdgeOf(dart);
          flow[j][e] += (dart & 1) ? -u : u;
          load[e] += u;
          len[e] *= 1.0 + step * u / net.capacity(e);
        }
        remaining -= u;
      }
    }
    // Keep lengths in range; only ratios matter.
    const double top = *std::max_element(len.begin(), len.end());
    if (top > 1e100) {
      for (double& l : len) l /= top;
    }
    // Dual bound from the current lengths.
    double volume = 0;
    for (EdgeId e = 0; e < m; ++e) {
      if (usable[e]) volume += net.capacity(e) * len[e];
    }
    double routed_length = 0;
    VertexId last = kNoVertex;
    for (int j : commodities) {
      const Demand& d = net.demands()[j];
      if (d.s != last) {
        Distances(g, len, usable, d.s, dist, parent);
        last = d.s;
      }
      routed_length += d.amount * dist[d.t];
    }
    const double bound = volume / routed_length;
    if (bound < result.upper_bound) {
      result.upper_bound = bound;
      result.lengths = len;
    }
    double congestion = 0;
    for (EdgeId e = 0; e < m; ++e) {
      if (usable[e]) congestion = std::max(congestion, load[e] / net.capacity(e));
    }
    result.phases = phase;
    result.lambda = phase / congestion;
    if (result.lambda >= (1 - epsilon) * result.upper_bound) break;
  }
  double congestion = 0;
  for (EdgeId e = 0; e < m; ++e) {
    if (usable[e]) congestion = std::max(congestion, load[e] / net.capacity(e));
  }
  result.edge_flow.resize(m);
  for (EdgeId e = 0; e < m; ++e) result.edge_flow[e] = load[e] / congestion;
  for (auto& f : flow) {
    for (double& x : f) x /= congestion;
  }
  result.commodity_flow = std::move(flow);
  result.max_congestion = 1.0;
  result.lambda = result.phases / congestion;
  return result;
}

bool CheckFlow(const FlowNetwork& net, const FlowResult& flow, double tolerance) {
  const Graph& g = net.graph();
  const int m = g.num_edges();
  std::vector<double> total(m, 0.0);
  for (std::size_t j = 0; j < net.demands().size(); ++j) {
    const Demand& d = net.demands()[j];
    std::vector<double> excess(g.num_vertices(), 0.0);
    for (EdgeId e = 0; e < m; ++e) {
      const double f = flow.commodity_flow[j][e];
      excess[g.edge(e).u] -= f;
      excess[g.edge(e).v] += f;
      total[e] += std::abs(f);
    }
    const double scale = std::max(1.0, d.amount * flow.lambda);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (v == d.s || v == d.t) continue;
      if (std::abs(excess[v]) > tolerance * scale) return false;
    }
    if (excess[d.t] < flow.lambda * d.amount - tolerance * scale) return false;
  }
  for (EdgeId e = 0; e < m; ++e) {
    if (total[e] > net.capacity(e) * (1 + tolerance) + tolerance) return false;
  }
  return true;
}

CutResult BestTreeCut(const FlowNetwork& net, const TreeSample& tree) {
  const int n = net.num_vertices();
  const int nodes = tree.tree.num_nodes();
  std::vector<std::vector<VertexId>> at_node(nodes);
  for (VertexId v = 0; v < n; ++v) at_node[tree.Node(v)].push_back(v);
  // Subtree vertex lists via children, built bottom-up as membership flags.
  std::vector<std::vector<char>> below(nodes);
  CutResult best;
  std::vector<char> in_s;
  for (int v = nodes - 1; v >= 0; --v) {
    below[v].assign(n, 0);
    for (VertexId x : at_node[v]) below[v][x] = 1;
  }
  for (int v = nodes - 1; v > 0; --v) {
    const int p = tree.tree.parent(v);
    for (VertexId x = 0; x < n; ++x) below[p][x] |= below[v][x];
  }
  for (int v = 1; v < nodes; ++v) {
    double cap, dem;
    Evaluate(net, below[v], cap, dem);
    if (!(dem > 0)) continue;
    if (best.side.empty() || Sparser(cap, dem, best.capacity, best.demand)) {
      best.side.clear();
      for (VertexId x = 0; x < n; ++x) {
        if (below[v][x]) best.side.push_back(x);
      }
      best.capacity = cap;
      best.demand = dem;
      best.sparsity = cap / dem;
    }
  }
  return best;
}

CutResult TreeRound(const FlowNetwork& net, const TreeSampler& sampler, long samples, std::uint64_t seed) {
  if (samples < 1) Fail(ErrorCode::kBadParams, "at least one sample is required");
  std::vector<CutResult> per(samples);
  ParallelFor(static_cast<std::size_t>(samples), [&](std::size_t s) {
    Rng rng(seed, s);
    per[s] = BestTreeCut(net, sampler(rng));
  });
  CutResult best;
  for (const CutResult& c : per) {
    if (c.side.empty()) continue;
    if (best.side.empty() || Sparser(c.capacity, c.demand, best.capacity, best.demand)) best = c;
  }
  if (best.side.empty()) Fail(ErrorCode::kNoSeparatedDemand, "no tree cut separates a demand");
  return best;
}

GapResult FlowCutGap(const FlowNetwork& net, double epsilon) {
  GapResult r;
  r.flow = ConcurrentFlow(net, epsilon);
  r.cut = SparsestCutBruteForce(net);
  r.gap = r.cut.sparsity / r.flow.lambda;
  return r;
}

}  // namespace planegap
