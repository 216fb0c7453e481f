#pragma once

#include <span>
#include <vector>

#include "json.hpp"
#include "planegap/graph.hpp"

namespace planegap {

// Rooted tree with nonnegative edge lengths. Node 0 is the root; every other
// node has a parent with a smaller id.
class MetricTree {
 public:
  MetricTree();

  int num_nodes() const { return static_cast<int>(parent_.size()); }
  int AddNode(int parent, Length length);
  int parent(int node) const { return parent_[node]; }
  Length length(int node) const { return length_[node]; }  // edge to parent
  void set_length(int node, Length length) { length_[node] = length; }
  int depth(int node) const { return depth_[node]; }
  Length root_distance(int node) const { return root_distance_[node]; }

  // Recomputes root distances after set_length.
  void Refresh();
  int Lca(int a, int b) const;
  Length Distance(int a, int b) const;
  // Distances from `node` to every node.
  std::vector<Length> DistancesFrom(int node) const;
  Length TotalLength() const;
  std::vector<std::vector<int>> Children() const;

 private:
  std::vector<int> parent_;
  std::vector<Length> length_;
  std::vector<int> depth_;
  std::vector<Length> root_distance_;
};

// A tree together with a map from source points (vertex ids) to tree nodes.
struct TreeSample {
  MetricTree tree;
  std::vector<VertexId> points;  // sorted source points
  std::vector<int> node_of;      // indexed by vertex id, -1 if not a point

  void Map(VertexId point, int node);
  int Node(VertexId point) const;
  bool Has(VertexId point) const {
    return point >= 0 && point < static_cast<VertexId>(node_of.size()) && node_of[point] >= 0;
  }
  Length Distance(VertexId x, VertexId y) const { return tree.Distance(Node(x), Node(y)); }
};

// {"nodes": N, "parent": [...], "len": [...], "map": [[vertex, node], ...]}
nlohmann::json ToJson(const TreeSample& sample);
TreeSample TreeSampleFromJson(const nlohmann::json& doc);

}  // namespace planegap
