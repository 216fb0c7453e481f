#pragma once

#include <span>
#include <vector>

#include "planegap/plane_graph.hpp"

namespace planegap {

// Closed boundary walk. An isolated vertex forms a face with no darts.
struct Face {
  std::vector<DartId> darts;
  std::vector<VertexId> walk;      // tail of each dart, in walk order
  std::vector<VertexId> vertices;  // sorted, unique

  bool Contains(VertexId v) const;
};

struct FaceSet {
  std::vector<Face> faces;
  std::vector<int> face_of_dart;

  int FaceOf(DartId d) const { return face_of_dart[d]; }
};

// Requires a consistent rotation (throws ROTATION_MISMATCH otherwise).
FaceSet TraceFaces(const PlaneGraph& graph);

struct FaceCover {
  int gamma = 0;
  std::vector<int> faces;  // indices into FaceSet::faces, ascending
  bool exact = true;       // false when the greedy fallback was used
};

// Faces containing at least one terminal above which the greedy cover is
// used instead of branch and bound.
inline constexpr int kExactFaceCoverLimit = 30;

// Minimum number of faces jointly containing `terms`. An empty terminal set
// yields gamma = 0 and an empty cover.
FaceCover ComputeFaceCover(const FaceSet& faces, std::span<const VertexId> terms,
                           int num_vertices);
FaceCover ComputeFaceCover(const PlaneGraph& graph, std::span<const VertexId> terms);

}  // namespace planegap
