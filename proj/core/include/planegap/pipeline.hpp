#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "planegap/peeling.hpp"
#include "planegap/surgery.hpp"
#include "planegap/trees.hpp"

namespace planegap {

struct EmbedderOptions {
  PartitionScheme scheme = PartitionScheme::kPlanar;
  bool certify = true;           // check domination on every sample
  double tolerance = 1e-9;
};

// Per-sample breakdown used for tracing.
struct EmbedDetails {
  SelectorMap psi;
  TreeSample core_tree;                 // on A
  std::vector<VertexId> used_branches;  // A-vertices that received terminals
};

// Random dominating trees on the terminals of a plane graph. Inputs whose
// terminals lie on one face go straight to OsToTree. Otherwise the graph is
// cut open along shortest paths between the cover faces, the boundary A of
// the new face gets a tree from the path-union sampler, the remaining
// vertices are peeled onto branches, and each used branch is embedded as a
// one-face instance glued at its A-vertex.
class TerminalTreeEmbedder {
 public:
  explicit TerminalTreeEmbedder(const PlaneGraph& graph, EmbedderOptions options = {});

  // Tree on the terminals of the input (original vertex ids). Throws
  // DOMINATION_VIOLATION when certification is on and fails.
  TreeSample Sample(Rng& rng, EmbedDetails* details = nullptr) const;

  int gamma() const { return gamma_; }
  bool used_surgery() const { return trace_.has_value(); }
  const std::optional<SurgeryTrace>& trace() const { return trace_; }
  const std::vector<VertexId>& a_set() const { return a_set_; }
  const DistanceMatrix& distances() const { return distances_; }
  const PlaneGraph& graph() const { return graph_; }

 private:
  struct Branch {
    std::vector<VertexId> vertices;  // base ids of H^a: V \ A then a
    std::vector<int> local;          // base id -> local index, -1 outside
    DistanceMatrix metric;           // d_{H^a}
  };

  PlaneGraph graph_;
  EmbedderOptions options_;
  DistanceMatrix distances_;  // d_G over input vertices
  int gamma_ = 0;
  std::optional<SurgeryTrace> trace_;
  std::vector<VertexId> a_set_;
  std::vector<VertexId> h_terminals_;
  std::vector<char> h_terminal_;
  std::unique_ptr<PeelSampler> peel_;
  std::vector<Branch> branches_;
  std::vector<std::vector<VertexId>> tree_paths_;
};

// Checks that in every branch graph H^a the terminals of each connected
// component lie on one face, using the rotation system of G2.
bool BranchTerminalsOnOneFace(const PlaneGraph& g2, std::span<const VertexId> a,
                              std::span<const VertexId> terminals);

}  // namespace planegap
