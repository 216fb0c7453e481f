#include "planegap/polymatroid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "planegap/error.hpp"
#include "planegap/graph_io.hpp"
#include "planegap/parallel.hpp"
#include "planegap/simplex.hpp"

namespace planegap {

std::string ToString(CapacityKind kind) {
  switch (kind) {
    case CapacityKind::kConstant:
      return "CONSTANT";
    case CapacityKind::kTruncatedAdditive:
      return "TRUNCATED_ADDITIVE";
    case CapacityKind::kCoverage:
      return "COVERAGE";
    case CapacityKind::kTable:
      return "TABLE";
  }
  return "?";
}

CapacityKind ParseCapacityKind(const std::string& name) {
  if (name == "CONSTANT") return CapacityKind::kConstant;
  if (name == "TRUNCATED_ADDITIVE") return CapacityKind::kTruncatedAdditive;
  if (name == "COVERAGE") return CapacityKind::kCoverage;
  if (name == "TABLE") return CapacityKind::kTable;
  Fail(ErrorCode::kParseError, "unknown capacity kind '" + name + "'");
}

double VertexCapacity::Evaluate(std::uint32_t mask) const {
  switch (kind) {
    case CapacityKind::kConstant:
      return mask ? constant : 0.0;
    case CapacityKind::kTruncatedAdditive: {
      double sum = 0;
      for (std::uint32_t m = mask; m; m &= m - 1) sum += weights[std::countr_zero(m)];
      return std::min(sum, budget);
    }
    case CapacityKind::kCoverage: {
      std::uint64_t items = 0;
      for (std::uint32_t m = mask; m; m &= m - 1) items |= covers[std::countr_zero(m)];
      double sum = 0;
      for (std::uint64_t i = items; i; i &= i - 1) sum += item_weights[std::countr_zero(i)];
      return sum;
    }
    case CapacityKind::kTable:
      return table[mask];
  }
  return 0;
}

VertexCapacity VertexCapacity::Constant(double c) {
  VertexCapacity r;
  r.kind = CapacityKind::kConstant;
  r.constant = c;
  return r;
}

VertexCapacity VertexCapacity::TruncatedAdditive(std::vector<double> w, double budget) {
  VertexCapacity r;
  r.kind = CapacityKind::kTruncatedAdditive;
  r.weights = std::move(w);
  r.budget = budget;
  return r;
}

VertexCapacity VertexCapacity::Coverage(std::vector<double> item_weights, std::vector<std::uint64_t> covers) {
  if (item_weights.size() > 64) Fail(ErrorCode::kBadParams, "coverage supports at most 64 items");
  VertexCapacity r;
  r.kind = CapacityKind::kCoverage;
  r.item_weights = std::move(item_weights);
  r.covers = std::move(covers);
  return r;
}

VertexCapacity VertexCapacity::Table(std::vector<double> values) {
  if (values.empty() || !std::has_single_bit(values.size())) {
    Fail(ErrorCode::kBadParams, "table size must be a power of two");
  }
  VertexCapacity r;
  r.kind = CapacityKind::kTable;
  r.table = std::move(values);
  return r;
}

namespace {

// Number of local elements the function is defined on, or -1 if unbounded.
int Arity(const VertexCapacity& rho) {
  switch (rho.kind) {
    case CapacityKind::kConstant:
      return -1;
    case CapacityKind::kTruncatedAdditive:
      return static_cast<int>(rho.weights.size());
    case CapacityKind::kCoverage:
      return static_cast<int>(rho.covers.size());
    case CapacityKind::kTable:
      return std::countr_zero(rho.table.size());
  }
  return -1;
}

void RequireArity(const VertexCapacity& rho, int degree) {
  const int arity = Arity(rho);
  if (arity >= 0 && arity != degree) {
    Fail(ErrorCode::kBadParams, "capacity function has " + std::to_string(arity) + " elements, vertex degree is " +
                                    std::to_string(degree));
  }
}

}  // namespace

bool CheckSubmodular(const VertexCapacity& rho, int degree, double tolerance) {
  if (degree > 12) Fail(ErrorCode::kDegreeTooLarge, "exhaustive check is limited to degree 12");
  RequireArity(rho, degree);
  const std::uint32_t full = (1u << degree);
  std::vector<double> f(full);
  for (std::uint32_t s = 0; s < full; ++s) f[s] = rho.Evaluate(s);
  if (std::abs(f[0]) > tolerance) return false;
  for (std::uint32_t s = 0; s < full; ++s) {
    if (!std::isfinite(f[s]) || f[s] < -tolerance) return false;
    for (int e = 0; e < degree; ++e) {
      if (f[s | (1u << e)] < f[s] - tolerance) return false;
    }
  }
  for (std::uint32_t a = 0; a < full; ++a) {
    for (std::uint32_t b = a + 1; b < full; ++b) {
      if (f[a] + f[b] < f[a & b] + f[a | b] - tolerance) return false;
    }
  }
  return true;
}

PolymatroidNetwork::PolymatroidNetwork(PlaneGraph graph)
    : plane_(std::move(graph)),
      incident_(plane_.num_vertices()),
      caps_(plane_.num_vertices(), VertexCapacity::Constant(1.0)) {
  const Graph& g = plane_.graph();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    incident_[g.edge(e).u].push_back(e);
    if (g.edge(e).v != g.edge(e).u) incident_[g.edge(e).v].push_back(e);
  }
}

int PolymatroidNetwork::LocalIndex(VertexId v, EdgeId e) const {
  const auto& inc = incident_.at(v);
  auto it = std::lower_bound(inc.begin(), inc.end(), e);
  if (it == inc.end() || *it != e) return -1;
  return static_cast<int>(it - inc.begin());
}

void PolymatroidNetwork::set_capacity(VertexId v, VertexCapacity rho) {
  RequireArity(rho, static_cast<int>(incident_.at(v).size()));
  caps_[v] = std::move(rho);
}

void PolymatroidNetwork::AddDemand(VertexId s, VertexId t, double amount) {
  if (!graph().IsVertex(s) || !graph().IsVertex(t)) Fail(ErrorCode::kBadVertex, "demand endpoint");
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

PolymatroidNetwork PolymatroidNetworkFromJson(const nlohmann::json& doc) {
  PolymatroidNetwork net(PlaneGraphFromJson(doc));
  std::map<std::int64_t, VertexId> by_label;
  for (VertexId v = 0; v < net.num_vertices(); ++v) by_label[net.plane().label(v)] = v;
  auto vertex = [&](std::int64_t label) {
    auto it = by_label.find(label);
    if (it == by_label.end()) Fail(ErrorCode::kBadVertex, "unknown vertex label " + std::to_string(label));
    return it->second;
  };
  auto local = [&](VertexId v, const std::string& key) {
    const int i = net.LocalIndex(v, std::stoi(key));
    if (i < 0) Fail(ErrorCode::kParseError, "edge " + key + " is not incident to the vertex");
    return i;
  };
  try {
    if (doc.contains("caps")) {
      for (const auto& [key, spec] : doc.at("caps").items()) {
        const VertexId v = vertex(std::stoll(key));
        const int deg = static_cast<int>(net.incident(v).size());
        const CapacityKind kind = ParseCapacityKind(spec.at("kind").get<std::string>());
        const nlohmann::json& p = spec.at("params");
        switch (kind) {
          case CapacityKind::kConstant:
            net.set_capacity(v, VertexCapacity::Constant(p.at("c").get<double>()));
            break;
          case CapacityKind::kTruncatedAdditive: {
            std::vector<double> w(deg, 0.0);
            for (const auto& [e, x] : p.at("w").items()) w[local(v, e)] = x.get<double>();
            const double b = p.contains("b") && !p.at("b").is_null() ? p.at("b").get<double>() : INFINITY;
            net.set_capacity(v, VertexCapacity::TruncatedAdditive(std::move(w), b));
            break;
          }
          case CapacityKind::kCoverage: {
            std::vector<std::uint64_t> covers(deg, 0);
            std::vector<double> items = p.at("items").get<std::vector<double>>();
            for (const auto& [e, list] : p.at("covers").items()) {
              for (int item : list.get<std::vector<int>>()) {
                if (item < 0 || item >= static_cast<int>(items.size())) Fail(ErrorCode::kParseError, "bad item index");
                covers[local(v, e)] |= 1ull << item;
              }
            }
            net.set_capacity(v, VertexCapacity::Coverage(std::move(items), std::move(covers)));
            break;
          }
          case CapacityKind::kTable:
            net.set_capacity(v, VertexCapacity::Table(p.at("values").get<std::vector<double>>()));
            break;
        }
      }
    }
    if (doc.contains("demands")) {
      for (const auto& d : doc.at("demands")) {
        net.AddDemand(vertex(d.at("s").get<std::int64_t>()), vertex(d.at("t").get<std::int64_t>()),
                      d.at("d").get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, e.what());
  } catch (const std::invalid_argument&) {
    Fail(ErrorCode::kParseError, "caps keys must be integers");
  } catch (const std::out_of_range&) {
    Fail(ErrorCode::kParseError, "caps key out of range");
  }
  return net;
}

nlohmann::json ToJson(const PolymatroidNetwork& net) {
  nlohmann::json doc = ToJson(net.plane());
  nlohmann::json caps = nlohmann::json::object();
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    const VertexCapacity& rho = net.capacity(v);
    const auto inc = net.incident(v);
    nlohmann::json params = nlohmann::json::object();
    switch (rho.kind) {
      case CapacityKind::kConstant:
        params["c"] = rho.constant;
        break;
      case CapacityKind::kTruncatedAdditive: {
        nlohmann::json w = nlohmann::json::object();
        for (std::size_t i = 0; i < inc.size(); ++i) w[std::to_string(inc[i])] = rho.weights[i];
        params["w"] = std::move(w);
        params["b"] = std::isfinite(rho.budget) ? nlohmann::json(rho.budget) : nlohmann::json(nullptr);
        break;
      }
      case CapacityKind::kCoverage: {
        params["items"] = rho.item_weights;
        nlohmann::json covers = nlohmann::json::object();
        for (std::size_t i = 0; i < inc.size(); ++i) {
          std::vector<int> list;
          for (int k = 0; k < 64; ++k) {
            if ((rho.covers[i] >> k) & 1ull) list.push_back(k);
          }
          covers[std::to_string(inc[i])] = list;
        }
        params["covers"] = std::move(covers);
        break;
      }
      case CapacityKind::kTable:
        params["values"] = rho.table;
        break;
    }
    caps[std::to_string(net.plane().label(v))] = {{"kind", ToString(rho.kind)}, {"params", std::move(params)}};
  }
  doc["caps"] = std::move(caps);
  nlohmann::json demands = nlohmann::json::array();
  for (const Demand& d : net.demands()) {
    demands.push_back({{"s", net.plane().label(d.s)}, {"t", net.plane().label(d.t)}, {"d", d.amount}});
  }
  doc["demands"] = std::move(demands);
  return doc;
}

bool Feasible(const PolymatroidNetwork& net, std::span<const double> phi, double tolerance) {
  if (static_cast<int>(phi.size()) != net.num_edges()) Fail(ErrorCode::kBadParams, "one value per edge is required");
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    const auto inc = net.incident(v);
    const int deg = static_cast<int>(inc.size());
    if (deg > 20) Fail(ErrorCode::kDegreeTooLarge, "feasibility check is limited to degree 20");
    std::vector<double> load(std::size_t{1} << deg, 0.0);
    for (std::uint32_t s = 1; s < load.size(); ++s) {
      const int low = std::countr_zero(s);
      load[s] = load[s & (s - 1)] + phi[inc[low]];
      if (load[s] > net.Rho(v, s) + tolerance) return false;
    }
  }
  return true;
}

namespace {

struct CutWorkspace {
  std::vector<VertexId> ends_u, ends_v;
  std::vector<int> local_u, local_v;
  std::vector<VertexId> touched;
  std::vector<int> slot;  // vertex -> index in touched
};

CutWorkspace Prepare(const PolymatroidNetwork& net, std::span<const EdgeId> edges) {
  CutWorkspace w;
  w.slot.assign(net.num_vertices(), -1);
  for (EdgeId e : edges) {
    const Edge& edge = net.graph().edge(e);
    w.ends_u.push_back(edge.u);
    w.ends_v.push_back(edge.v);
    w.local_u.push_back(net.LocalIndex(edge.u, e));
    w.local_v.push_back(net.LocalIndex(edge.v, e));
    for (VertexId x : {edge.u, edge.v}) {
      if (w.slot[x] < 0) {
        w.slot[x] = static_cast<int>(w.touched.size());
        w.touched.push_back(x);
      }
    }
  }
  return w;
}

double EvaluateRange(const PolymatroidNetwork& net, const CutWorkspace& w, std::uint64_t lo, std::uint64_t hi) {
  const int k = static_cast<int>(w.ends_u.size());
  std::vector<std::uint32_t> masks(w.touched.size());
  double best = INFINITY;
  for (std::uint64_t g = lo; g < hi; ++g) {
    std::fill(masks.begin(), masks.end(), 0u);
    for (int i = 0; i < k; ++i) {
      if ((g >> i) & 1) {
        masks[w.slot[w.ends_v[i]]] |= 1u << w.local_v[i];
      } else {
        masks[w.slot[w.ends_u[i]]] |= 1u << w.local_u[i];
      }
    }
    double total = 0;
    for (std::size_t j = 0; j < masks.size() && total < best; ++j) {
      if (masks[j]) total += net.Rho(w.touched[j], masks[j]);
    }
    best = std::min(best, total);
  }
  return best;
}

std::vector<EdgeId> Normalize(const PolymatroidNetwork& net, std::span<const EdgeId> edges) {
  std::vector<EdgeId> s(edges.begin(), edges.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (EdgeId e : s) {
    if (e < 0 || e >= net.num_edges()) Fail(ErrorCode::kBadParams, "unknown edge " + std::to_string(e));
  }
  return s;
}

double CutCapacitySequential(const PolymatroidNetwork& net, std::span<const EdgeId> edges) {
  if (edges.empty()) return 0.0;
  const CutWorkspace w = Prepare(net, edges);
  return EvaluateRange(net, w, 0, std::uint64_t{1} << edges.size());
}

double SeparatedDemand(const PolymatroidNetwork& net, const std::vector<char>& removed) {
  const Graph& g = net.graph();
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!removed[e]) parent[find(g.edge(e).u)] = find(g.edge(e).v);
  }
  double dem = 0;
  for (const Demand& d : net.demands()) {
    if (find(d.s) != find(d.t)) dem += d.amount;
  }
  return dem;
}

bool Sparser(double cap_a, double dem_a, double cap_b, double dem_b) { return cap_a * dem_b < cap_b * dem_a; }

}  // namespace

double CutCapacity(const PolymatroidNetwork& net, std::span<const EdgeId> edges) {
  const std::vector<EdgeId> s = Normalize(net, edges);
  if (s.size() > 20) Fail(ErrorCode::kTooLarge, "cut capacity is limited to 20 edges");
  if (s.empty()) return 0.0;
  const CutWorkspace w = Prepare(net, s);
  const std::uint64_t total = std::uint64_t{1} << s.size();
  if (s.size() < 12) return EvaluateRange(net, w, 0, total);
  const std::size_t chunks = 64;
  std::vector<double> part(chunks, INFINITY);
  ParallelFor(chunks, [&](std::size_t c) { part[c] = EvaluateRange(net, w, total * c / chunks, total * (c + 1) / chunks); });
  return *std::min_element(part.begin(), part.end());
}

PolyCutResult PolySparsity(const PolymatroidNetwork& net, std::span<const EdgeId> edges) {
  PolyCutResult r;
  r.edges = Normalize(net, edges);
  std::vector<char> removed(net.num_edges(), 0);
  for (EdgeId e : r.edges) removed[e] = 1;
  r.demand = SeparatedDemand(net, removed);
  if (!(r.demand > 0)) Fail(ErrorCode::kNoSeparatedDemand, "edge set separates no demand");
  r.capacity = CutCapacity(net, r.edges);
  r.sparsity = r.capacity / r.demand;
  return r;
}

PolyCutResult PolySparsest(const PolymatroidNetwork& net) {
  const int m = net.num_edges();
  const int n = net.num_vertices();
  const bool exhaustive = m <= 16;
  if (!exhaustive && n > 20) Fail(ErrorCode::kTooLarge, "sparsest edge set search is limited to 16 edges or 20 vertices");
  const std::uint64_t total = exhaustive ? (std::uint64_t{1} << m) : (std::uint64_t{1} << (n - 1));
  struct Best {
    std::vector<EdgeId> edges;
    double cap = 0, dem = 0;
    bool found = false;
  };
  const std::size_t chunks = std::min<std::uint64_t>(64, total);
  std::vector<Best> best(chunks);
  const Graph& g = net.graph();
  ParallelFor(chunks, [&](std::size_t c) {
    Best b;
    std::vector<char> removed(m);
    std::vector<EdgeId> s;
    for (std::uint64_t mask = std::max<std::uint64_t>(1, total * c / chunks); mask < total * (c + 1) / chunks; ++mask) {
      s.clear();
      for (EdgeId e = 0; e < m; ++e) {
        const bool in = exhaustive ? ((mask >> e) & 1) != 0
                                   : (((mask >> g.edge(e).u) ^ (mask >> g.edge(e).v)) & 1) != 0;
        removed[e] = in;
        if (in) s.push_back(e);
      }
      if (s.empty()) continue;
      const double dem = SeparatedDemand(net, removed);
      if (!(dem > 0)) continue;
      const double cap = CutCapacitySequential(net, s);
      if (!b.found || Sparser(cap, dem, b.cap, b.dem)) b = {s, cap, dem, true};
    }
    best[c] = std::move(b);
  });
  const Best* winner = nullptr;
  for (const Best& b : best) {
    if (b.found && (!winner || Sparser(b.cap, b.dem, winner->cap, winner->dem))) winner = &b;
  }
  if (!winner) Fail(ErrorCode::kNoSeparatedDemand, "no edge set separates a demand");
  PolyCutResult r;
  r.edges = winner->edges;
  r.capacity = winner->cap;
  r.demand = winner->dem;
  r.sparsity = winner->cap / winner->dem;
  r.exhaustive = exhaustive;
  return r;
}

PolyFlowResult PolyMcf(const PolymatroidNetwork& net) {
  const Graph& g = net.graph();
  const int n = net.num_vertices();
  if (n > 10) Fail(ErrorCode::kTooLarge, "path LP is limited to 10 vertices");
  std::vector<int> active;
  for (std::size_t j = 0; j < net.demands().size(); ++j) {
    if (net.demands()[j].amount > 0) active.push_back(static_cast<int>(j));
  }
  if (active.empty()) Fail(ErrorCode::kZeroDemand, "all demands are zero");
  for (VertexId v = 0; v < n; ++v) {
    if (net.incident(v).size() > 16) Fail(ErrorCode::kDegreeTooLarge, "path LP is limited to degree 16");
  }

  constexpr std::size_t kMaxPaths = 10000;
  PolyFlowResult result;
  std::vector<std::vector<EdgeId>> path_edges;
  for (int j : active) {
    const Demand& d = net.demands()[j];
    const std::size_t before = path_edges.size();
    std::vector<char> on_path(n, 0);
    std::vector<VertexId> verts{d.s};
    std::vector<EdgeId> edges;
    on_path[d.s] = 1;
    auto dfs = [&](auto&& self, VertexId x) -> void {
      if (x == d.t) {
        if (path_edges.size() >= kMaxPaths) Fail(ErrorCode::kPathExplosion, "more than 10^4 simple paths");
        path_edges.push_back(edges);
        result.paths.push_back(verts);
        result.path_demand.push_back(j);
        return;
      }
      for (DartId dart : g.out_darts(x)) {
        const VertexId y = g.head(dart);
        if (on_path[y]) continue;
        on_path[y] = 1;
        verts.push_back(y);
        edges.push_back(EdgeOf(dart));
        self(self, y);
        edges.pop_back();
        verts.pop_back();
        on_path[y] = 0;
      }
    };
    dfs(dfs, d.s);
    if (path_edges.size() == before) {
      Fail(ErrorCode::kDisconnectedDemand, "demand between " + std::to_string(d.s) + " and " + std::to_string(d.t) +
                                               " has no path");
    }
  }

  const int paths = static_cast<int>(path_edges.size());
  const int vars = 1 + paths;  // epsilon, then one flow per path
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<std::vector<int>> paths_of(net.demands().size());
  for (int p = 0; p < paths; ++p) paths_of[result.path_demand[p]].push_back(p);
  for (int j : active) {
    std::vector<double> row(vars, 0.0);
    row[0] = net.demands()[j].amount;
    for (int p : paths_of[j]) row[1 + p] = -1.0;
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  // usage[v][p]: local mask of E(v) edges used by path p.
  for (VertexId v = 0; v < n; ++v) {
    const auto inc = net.incident(v);
    if (inc.empty()) continue;
    std::vector<std::uint32_t> usage(paths, 0);
    bool any = false;
    for (int p = 0; p < paths; ++p) {
      for (EdgeId e : path_edges[p]) {
        const int i = net.LocalIndex(v, e);
        if (i >= 0) usage[p] |= 1u << i;
      }
      any = any || usage[p];
    }
    if (!any) continue;
    for (std::uint32_t s = 1; s < (1u << inc.size()); ++s) {
      std::vector<double> row(vars, 0.0);
      bool nonzero = false;
      for (int p = 0; p < paths; ++p) {
        const int k = std::popcount(usage[p] & s);
        if (k) {
          row[1 + p] = k;
          nonzero = true;
        }
      }
      if (!nonzero) continue;
      a.push_back(std::move(row));
      b.push_back(net.Rho(v, s));
    }
  }
  std::vector<double> c(vars, 0.0);
  c[0] = 1.0;
  const LpResult lp = MaximizeLp(a, b, c);
  if (lp.status != LpStatus::kOptimal) Fail(ErrorCode::kInvariantViolation, "path LP is unbounded");
  result.epsilon = lp.objective;
  result.path_flow.assign(lp.x.begin() + 1, lp.x.end());
  result.edge_flow.assign(net.num_edges(), 0.0);
  for (int p = 0; p < paths; ++p) {
    for (EdgeId e : path_edges[p]) result.edge_flow[e] += result.path_flow[p];
  }
  result.lp_rows = static_cast<long>(a.size());
  return result;
}

}  // namespace planegap
