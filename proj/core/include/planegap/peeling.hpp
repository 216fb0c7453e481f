#pragma once

#include <memory>
#include <span>
#include <vector>

#include "planegap/partitions.hpp"
#include "planegap/paths.hpp"
#include "planegap/trees.hpp"

namespace planegap {

// The graph obtained by keeping G[A] as a core and attaching, at every
// a in A, a private copy of G[(V \ A) + a]. Vertex ids: hats 0..|A|-1 in the
// order of `a_set`, then branch copies (a, v) branch by branch.
struct PeeledGraph {
  int base_vertices = 0;
  std::vector<VertexId> a_set;     // sorted
  std::vector<int> a_index;        // base vertex -> index in a_set, -1 outside A
  std::vector<VertexId> rest;      // V \ A, sorted
  std::vector<int> rest_index;     // base vertex -> index in rest, -1 inside A
  Graph graph;
  std::vector<VertexId> origin;    // peeled vertex -> base vertex
  std::vector<int> branch;         // peeled vertex -> index of its a (hats: own index)

  VertexId Hat(int a) const { return a; }
  VertexId Copy(int a, VertexId v) const {
    return static_cast<VertexId>(a_set.size()) + a * static_cast<VertexId>(rest.size()) + rest_index[v];
  }
  bool IsHat(VertexId x) const { return x < static_cast<VertexId>(a_set.size()); }
};

// Throws EMPTY_A.
PeeledGraph BuildPeeled(const Graph& graph, std::span<const VertexId> a);

// psi: base vertex -> peeled vertex.
struct SelectorMap {
  std::vector<VertexId> image;
};

// psi(a) is the hat of a, psi(v) = (a, v) for some a in A.
bool IsSelector(const PeeledGraph& peeled, const SelectorMap& psi);

// Distances in the peeled graph, from branch-local shortest paths. The core
// metric is the shortest-path metric of G[A].
class PeeledMetric {
 public:
  PeeledMetric(const Graph& graph, std::span<const VertexId> a);

  const PeeledGraph& peeled() const { return peeled_; }
  const DistanceMatrix& core() const { return core_; }  // indexed by a index
  // d_{G^a}(a, v), infinite when v's component of G - A avoids a.
  Length ToHat(int a, VertexId v) const { return to_hat_[a][v]; }
  // d_{G^a}(u, v) for u, v outside A.
  Length InBranch(int a, VertexId u, VertexId v) const;
  // Distance between peeled vertices x and y, with the core metric replaced
  // by `core` when given (indexed by a index).
  Length Distance(VertexId x, VertexId y, const DistanceMatrix* core = nullptr) const;

 private:
  PeeledGraph peeled_;
  DistanceMatrix core_;
  std::vector<std::vector<Length>> to_hat_;
  std::vector<DistanceMatrix> branch_;  // per a, over rest indices
};

// Draws selector maps from Lipschitz partitions of (V, d_{H'}), where H'
// drops the edges inside A. Scales form the ladder 2^(k + u) for a uniform
// random offset u; a vertex at distance t from A is decided at the smallest
// ladder scale >= 2t. Each piece (vertices of one scale, one cluster and one
// component K of H - A) goes to the branch of the A-vertex adjacent to K
// that is closest, via its branch, to the piece; ties go to the smaller
// vertex.
class PeelSampler {
 public:
  PeelSampler(const Graph& h, std::span<const VertexId> a,
              PartitionScheme scheme = PartitionScheme::kPlanar);

  SelectorMap Sample(Rng& rng) const;
  const PeeledGraph& peeled() const { return peeled_; }
  const std::vector<Length>& scales() const { return scales_; }
  // d_{H^a}(a, v) for v outside A.
  Length BranchDistance(int a, VertexId v) const { return to_hat_[a][v]; }

 private:
  PeeledGraph peeled_;
  Graph h_prime_;
  DistanceMatrix metric_;  // d_{H'}
  PartitionScheme scheme_;
  std::vector<Length> scales_;
  std::vector<int> component_;                  // of H - A, -1 on A
  std::vector<std::vector<int>> adjacent_a_;    // component -> sorted a indices
  std::vector<std::vector<Length>> to_hat_;
  std::vector<Length> distance_to_a_;
};

// Ĝ_A with its core replaced by a tree on A: the tree's nodes come first
// (tree node ids), then the branch copies as in the peeled graph, shifted.
struct SubstitutedGraph {
  Graph graph;
  std::vector<VertexId> hat_node;      // a index -> vertex of the tree part
  VertexId branch_offset = 0;          // peeled copy x -> x - |A| + branch_offset
  int tree_nodes = 0;
};

// Throws VERTEX_SET_MISMATCH unless the tree's points are exactly A.
SubstitutedGraph SubstituteTree(const PeeledGraph& peeled, const TreeSample& tree);

// One draw of the composition: selector map and tree on A, from
// independent substreams.
struct ComposedDraw {
  SelectorMap psi;
  TreeSample tree;  // on A
};

class ComposedSampler {
 public:
  ComposedSampler(const PeelSampler& mu, TreeSampler nu) : mu_(&mu), nu_(std::move(nu)) {}
  ComposedDraw Sample(Rng& rng) const;

 private:
  const PeelSampler* mu_;
  TreeSampler nu_;
};

// dist in the composed host: branch distances plus d_T between hats.
Length ComposedDistance(const PeeledMetric& metric, const ComposedDraw& draw, VertexId u, VertexId v);

}  // namespace planegap
