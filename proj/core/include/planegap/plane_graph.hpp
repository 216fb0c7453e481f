#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "planegap/error.hpp"
#include "planegap/graph.hpp"

namespace planegap {

// A graph together with a combinatorial drawing (rotation system) and a
// terminal set. rotation(v) lists the darts leaving v in cyclic order; the
// face to the left of dart d is continued by RotationNext(Twin(d)).
class PlaneGraph {
 public:
  PlaneGraph() = default;
  // Rotation defaults to the insertion order of each vertex's darts.
  explicit PlaneGraph(Graph graph);

  const Graph& graph() const { return graph_; }
  int num_vertices() const { return graph_.num_vertices(); }
  int num_edges() const { return graph_.num_edges(); }

  VertexId AddVertex();
  // New darts are appended at the end of both endpoints' rotations.
  EdgeId AddEdge(VertexId u, VertexId v, Length length);
  void set_length(EdgeId e, Length length) { graph_.set_length(e, length); }

  std::span<const DartId> rotation(VertexId v) const { return rotation_[v]; }
  // Entries equal to kNoDart mark slots that could not be resolved to a dart;
  // they are reported by Validate().
  void set_rotation(VertexId v, std::vector<DartId> order);
  // Resolves a cyclic neighbor list to darts, consuming parallel edges in
  // edge-id order. Returns false if some neighbor had no unused dart left.
  bool SetRotationFromNeighbors(VertexId v, std::span<const VertexId> order);

  // Cyclic successor / predecessor of d among the darts leaving tail(d).
  DartId RotationNext(DartId d) const;
  DartId RotationPrev(DartId d) const;
  int RotationIndex(DartId d) const { return position_[d]; }
  // The dart that follows d on the face to its left.
  DartId FaceNext(DartId d) const { return RotationNext(Twin(d)); }

  std::span<const VertexId> terminals() const { return terminals_; }
  void set_terminals(std::vector<VertexId> terminals);
  bool IsTerminal(VertexId v) const;

  // External identifiers used by the JSON format; default to 0..n-1.
  std::int64_t label(VertexId v) const { return labels_[v]; }
  std::span<const std::int64_t> labels() const { return labels_; }
  void set_labels(std::vector<std::int64_t> labels);

  // True iff every rotation is a permutation of the vertex's darts.
  bool RotationIsConsistent() const;

 private:
  void Reindex(VertexId v);

  Graph graph_;
  std::vector<std::vector<DartId>> rotation_;
  std::vector<int> position_;
  std::vector<VertexId> terminals_;
  std::vector<char> is_terminal_;
  std::vector<std::int64_t> labels_;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  int num_faces = 0;       // traced faces, one per component boundary walk set
  int num_components = 0;  // connected components
  bool Has(ErrorCode code) const;
};

// Checks rotation consistency, nonnegative lengths, terminal ids and the
// Euler relation V - E + F = 2 on every component (equivalently
// V - E + F' = 1 + C once the outer faces of the components are merged).
ValidationReport Validate(const PlaneGraph& graph);

// Throws the first violation, if any.
void RequireValid(const PlaneGraph& graph);

// Rotation system of a straight-line drawing: darts sorted by angle.
void SetRotationFromCoordinates(PlaneGraph& graph,
                                std::span<const double> x,
                                std::span<const double> y);

}  // namespace planegap
