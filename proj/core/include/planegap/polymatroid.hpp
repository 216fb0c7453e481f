#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "planegap/flowcut.hpp"
#include "planegap/plane_graph.hpp"

namespace planegap {

enum class CapacityKind { kConstant, kTruncatedAdditive, kCoverage, kTable };

std::string ToString(CapacityKind kind);
CapacityKind ParseCapacityKind(const std::string& name);

// A set function on the edges incident to one vertex. Subsets are bitmasks
// over the vertex's local edge order (incident edges by ascending id).
struct VertexCapacity {
  CapacityKind kind = CapacityKind::kConstant;
  double constant = 0;                 // kConstant: constant * [S nonempty]
  std::vector<double> weights;         // kTruncatedAdditive: per local edge
  double budget = INFINITY;            // kTruncatedAdditive: truncation level
  std::vector<double> item_weights;    // kCoverage: weight of each item
  std::vector<std::uint64_t> covers;   // kCoverage: item mask per local edge
  std::vector<double> table;           // kTable: value per subset mask

  double Evaluate(std::uint32_t mask) const;

  static VertexCapacity Constant(double c);
  static VertexCapacity TruncatedAdditive(std::vector<double> w, double budget = INFINITY);
  static VertexCapacity Coverage(std::vector<double> item_weights, std::vector<std::uint64_t> covers);
  static VertexCapacity Table(std::vector<double> values);
};

// Exhaustive check of rho(empty) = 0, monotonicity and submodularity over
// all subsets of `degree` elements. Throws DEGREE_TOO_LARGE above 12.
bool CheckSubmodular(const VertexCapacity& rho, int degree, double tolerance = 1e-12);

class PolymatroidNetwork {
 public:
  PolymatroidNetwork() = default;
  // Every vertex starts with CONSTANT capacity 1.
  explicit PolymatroidNetwork(PlaneGraph graph);

  const PlaneGraph& plane() const { return plane_; }
  const Graph& graph() const { return plane_.graph(); }
  int num_vertices() const { return plane_.num_vertices(); }
  int num_edges() const { return plane_.num_edges(); }

  std::span<const EdgeId> incident(VertexId v) const { return incident_[v]; }
  int LocalIndex(VertexId v, EdgeId e) const;
  const VertexCapacity& capacity(VertexId v) const { return caps_[v]; }
  void set_capacity(VertexId v, VertexCapacity rho);
  double Rho(VertexId v, std::uint32_t mask) const { return caps_[v].Evaluate(mask); }

  void AddDemand(VertexId s, VertexId t, double amount);
  std::span<const Demand> demands() const { return demands_; }

 private:
  PlaneGraph plane_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<VertexCapacity> caps_;
  std::vector<Demand> demands_;
};

// Graph JSON plus {"caps": {label: {"kind", "params"}}, "demands": [...]}.
PolymatroidNetwork PolymatroidNetworkFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const PolymatroidNetwork& net);

// True iff every vertex v and every S within E(v) has
// sum_{e in S} phi(e) <= rho_v(S) + tolerance. DEGREE_TOO_LARGE above 20.
bool Feasible(const PolymatroidNetwork& net, std::span<const double> phi, double tolerance = 1e-9);

// Minimum over the maps sending each edge of S to one of its endpoints of
// sum_v rho_v(preimage of v). TOO_LARGE above 20 edges.
double CutCapacity(const PolymatroidNetwork& net, std::span<const EdgeId> edges);

struct PolyCutResult {
  std::vector<EdgeId> edges;  // sorted
  double capacity = 0;
  double demand = 0;          // demand separated in (V, E \ S)
  double sparsity = INFINITY;
  bool exhaustive = true;     // false when only vertex cuts were searched
};

// NO_SEPARATED_DEMAND when removing S disconnects no demand pair.
PolyCutResult PolySparsity(const PolymatroidNetwork& net, std::span<const EdgeId> edges);

// Exact minimum over nonempty edge sets for up to 16 edges; up to 20 vertices
// the search falls back to edge sets of vertex cuts. TOO_LARGE beyond that.
PolyCutResult PolySparsest(const PolymatroidNetwork& net);

struct PolyFlowResult {
  double epsilon = 0;
  std::vector<std::vector<VertexId>> paths;  // simple paths, vertex sequences
  std::vector<int> path_demand;              // index into demands()
  std::vector<double> path_flow;
  std::vector<double> edge_flow;
  long lp_rows = 0;
};

// Largest epsilon such that an epsilon fraction of every demand routes on
// simple paths with a feasible edge flow. Solved exactly as a path LP.
// TOO_LARGE above 10 vertices, PATH_EXPLOSION above 10^4 paths,
// ZERO_DEMAND without positive demand.
PolyFlowResult PolyMcf(const PolymatroidNetwork& net);

}  // namespace planegap
