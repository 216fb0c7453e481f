#pragma once

#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "planegap/faces.hpp"
#include "planegap/paths.hpp"
#include "planegap/plane_graph.hpp"

namespace planegap {

// Union of shortest paths from each anchor to the root (the first anchor).
struct SpanningPathTree {
  VertexId root = kNoVertex;
  std::vector<VertexId> anchors;             // one per cover face
  std::vector<std::vector<VertexId>> paths;  // paths[i]: anchors[i] -> root
  std::vector<EdgeId> edges;                 // sorted
  std::vector<VertexId> vertices;            // sorted, includes root

  bool trivial() const { return edges.empty(); }
};

// Smallest vertex id on each face.
std::vector<VertexId> DefaultAnchors(const FaceSet& faces, std::span<const int> cover);

// Paths follow the deterministic Dijkstra tree rooted at anchors[0], so their
// union is always a tree. Throws DISCONNECTED_ANCHORS.
SpanningPathTree BuildSpanningPathTree(const PlaneGraph& graph, const FaceSet& faces,
                                       std::span<const int> cover,
                                       std::optional<std::vector<VertexId>> anchors = {});

// Result of cutting the plane graph open along a tree. Vertex ids 0..n-1 of
// the input survive (a tree vertex keeps its id for its first-visited copy);
// the remaining copies are appended in boundary-walk order.
struct TreeCutResult {
  PlaneGraph graph;
  bool cut = false;                   // false when the tree has no edges
  std::vector<VertexId> copy_of;      // new vertex -> input vertex
  std::vector<int> visit_index;       // k in the copy name (v, k); -1 off-tree
  std::vector<DartId> dart_map;       // input dart -> dart of the same face side
  std::vector<DartId> new_face;       // darts bounding the new face, in order
  std::vector<VertexId> cycle;        // tails of new_face
  std::vector<EdgeId> tree_edges;     // the input tree
};

// Throws P_NOT_SUBGRAPH (unknown or repeated edge) and P_NOT_TREE.
TreeCutResult TreeCut(const PlaneGraph& graph, std::span<const EdgeId> tree_edges);

struct SplitRecord {
  int face = -1;             // index of the cover face that needed it
  VertexId original = kNoVertex;
  VertexId first = kNoVertex;   // keeps the old id
  VertexId second = kNoVertex;  // new vertex
  EdgeId edge = -1;             // zero-length edge between them
};

struct StarRecord {
  VertexId original = kNoVertex;
  VertexId center = kNoVertex;
  std::vector<VertexId> leaves;
  std::vector<EdgeId> edges;
};

struct SplitStarResult {
  PlaneGraph graph;
  std::vector<VertexId> copy_of;     // vertex -> input vertex (stars: their v)
  std::vector<char> is_star_center;
  std::vector<VertexId> boundary;    // A: the new face's boundary cycle
  std::vector<DartId> new_face;      // boundary darts in G2, before stars
  std::vector<SplitRecord> splits;
  std::vector<StarRecord> stars;
  std::vector<DartId> face_registry;  // one dart of each cover face in G2
};

// `faces` and `cover` refer to the graph that was cut. Splits are applied in
// cover order, each one re-tracing faces first. Throws FACE_REGISTRY_MISSING
// when the cut did not happen or a cover face cannot be located.
SplitStarResult SplitAndStar(const TreeCutResult& cut, const FaceSet& faces,
                             std::span<const int> cover);

// d_G(copy_of[a], copy_of[b]) == d_G2(a, b) for every pair of vertices of G2,
// within `tolerance`.
bool CheckMetricPreserved(const Graph& original, const Graph& augmented,
                          std::span<const VertexId> copy_of, double tolerance = 1e-9);

// G2 plus an edge between every pair of boundary vertices with length equal
// to their original distance.
struct CliqueAugmented {
  Graph graph;                      // H
  EdgeId first_clique_edge = 0;     // edges >= this id were added
  std::vector<VertexId> a_set;      // sorted boundary vertices
  std::vector<char> in_a;
};

CliqueAugmented CliqueAugment(const Graph& g2, std::span<const VertexId> boundary,
                              const DistOracle& original_distances,
                              std::span<const VertexId> copy_of);

// Everything produced by the cut-open construction for one input.
struct SurgeryTrace {
  PlaneGraph input;
  FaceSet input_faces;
  FaceCover cover;
  SpanningPathTree tree;
  TreeCutResult cut;
  std::optional<SplitStarResult> split;  // absent when no cut was needed
  std::vector<VertexId> terminals;       // in G2: originals and their copies

  const PlaneGraph& g2() const { return split ? split->graph : cut.graph; }
  std::span<const VertexId> copy_of() const {
    return split ? std::span<const VertexId>(split->copy_of)
                 : std::span<const VertexId>(cut.copy_of);
  }
  std::span<const VertexId> boundary() const {
    return split ? std::span<const VertexId>(split->boundary) : std::span<const VertexId>();
  }
};

// Anchors follow DefaultAnchors, except that for faces after the first the
// smallest vertex other than the root is preferred, so that the tree is
// non-trivial whenever more than one face is needed.
SurgeryTrace RunSurgery(const PlaneGraph& graph);

nlohmann::json ToJson(const SurgeryTrace& trace);

}  // namespace planegap
