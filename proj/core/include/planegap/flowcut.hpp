#pragma once

#include <span>
#include <vector>

#include "json.hpp"
#include "planegap/plane_graph.hpp"
#include "planegap/trees.hpp"

namespace planegap {

struct Demand {
  VertexId s = kNoVertex;
  VertexId t = kNoVertex;
  double amount = 0;
};

// Undirected capacitated network with demands on unordered pairs. Edge
// lengths of the graph are ignored by flow computations.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  // Capacities default to 1.
  explicit FlowNetwork(PlaneGraph graph);

  const PlaneGraph& plane() const { return plane_; }
  const Graph& graph() const { return plane_.graph(); }
  int num_vertices() const { return plane_.num_vertices(); }

  double capacity(EdgeId e) const { return capacity_[e]; }
  std::span<const double> capacities() const { return capacity_; }
  void set_capacity(EdgeId e, double c);

  // Adds to the demand of {s, t}; pairs are stored with s < t.
  void AddDemand(VertexId s, VertexId t, double amount);
  std::span<const Demand> demands() const { return demands_; }
  double TotalDemand() const;

 private:
  PlaneGraph plane_;
  std::vector<double> capacity_;
  std::vector<Demand> demands_;
};

// Graph JSON plus {"capacities": {"<edge>": c}, "demands": [{"s","t","d"}]}
// (vertex ids in demands are labels).
FlowNetwork FlowNetworkFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const FlowNetwork& net);

struct CutResult {
  std::vector<VertexId> side;  // S, sorted
  double capacity = 0;
  double demand = 0;
  double sparsity = kInfinity;
};

// Throws NO_SEPARATED_DEMAND.
CutResult CutSparsity(const FlowNetwork& net, std::span<const VertexId> side);

// Exact minimum over all proper cuts; throws TOO_LARGE above 20 vertices.
CutResult SparsestCutBruteForce(const FlowNetwork& net);

struct FlowResult {
  double lambda = 0;        // certified feasible concurrent value
  double upper_bound = 0;   // dual bound on the optimum
  std::vector<double> edge_flow;  // total load per edge after scaling
  std::vector<std::vector<double>> commodity_flow;  // per demand, per edge (signed along dart 2e)
  std::vector<double> lengths;    // dual lengths attaining upper_bound
  double max_congestion = 0;      // load / capacity after scaling, <= 1
  int phases = 0;
};

// Multiplicative-weights concurrent flow with a shortest-path oracle; stops
// once lambda >= (1 - epsilon) * upper_bound. Throws ZERO_DEMAND,
// DISCONNECTED_DEMAND and BAD_PARAMS (epsilon outside (0, 0.5)).
FlowResult ConcurrentFlow(const FlowNetwork& net, double epsilon);

// Verifies conservation, capacity and that every demand routes at least
// lambda times its amount, all within tolerance.
bool CheckFlow(const FlowNetwork& net, const FlowResult& flow, double tolerance = 1e-9);

// Best cut obtained by removing one tree edge, over `samples` trees drawn
// with Rng(seed, s); every vertex of the network must be mapped.
CutResult TreeRound(const FlowNetwork& net, const TreeSampler& sampler, long samples, std::uint64_t seed);

// Tree cuts of a single tree sample.
CutResult BestTreeCut(const FlowNetwork& net, const TreeSample& tree);

struct GapResult {
  FlowResult flow;
  CutResult cut;
  double gap = 0;  // cut sparsity / lambda
};

GapResult FlowCutGap(const FlowNetwork& net, double epsilon);

}  // namespace planegap
