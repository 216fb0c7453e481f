#include "planegap/tree_metric.hpp"

#include <algorithm>

#include "planegap/error.hpp"

namespace planegap {

MetricTree::MetricTree() : parent_{-1}, length_{0}, depth_{0}, root_distance_{0} {}

int MetricTree::AddNode(int parent, Length length) {
  if (parent < 0 || parent >= num_nodes()) Fail(ErrorCode::kBadParams, "unknown parent node");
  if (!(length >= 0)) Fail(ErrorCode::kNegativeLength, "tree edge length must be nonnegative");
  parent_.push_back(parent);
  length_.push_back(length);
  depth_.push_back(depth_[parent] + 1);
  root_distance_.push_back(root_distance_[parent] + length);
  return num_nodes() - 1;
}

void MetricTree::Refresh() {
  for (int v = 1; v < num_nodes(); ++v) root_distance_[v] = root_distance_[parent_[v]] + length_[v];
}

int MetricTree::Lca(int a, int b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

Length MetricTree::Distance(int a, int b) const {
  return root_distance_[a] + root_distance_[b] - 2 * root_distance_[Lca(a, b)];
}

std::vector<Length> MetricTree::DistancesFrom(int node) const {
  // Path to the root, then every node via its lowest ancestor on that path.
  std::vector<Length> out(num_nodes());
  std::vector<int> on_path(num_nodes(), 0);
  for (int x = node; x >= 0; x = parent_[x]) on_path[x] = 1;
  std::vector<int> meet(num_nodes());
  for (int v = 0; v < num_nodes(); ++v) meet[v] = on_path[v] ? v : meet[parent_[v]];
  for (int v = 0; v < num_nodes(); ++v) {
    out[v] = root_distance_[v] + root_distance_[node] - 2 * root_distance_[meet[v]];
  }
  return out;
}

Length MetricTree::TotalLength() const {
  Length total = 0;
  for (Length l : length_) total += l;
  return total;
}

std::vector<std::vector<int>> MetricTree::Children() const {
  std::vector<std::vector<int>> out(num_nodes());
  for (int v = 1; v < num_nodes(); ++v) out[parent_[v]].push_back(v);
  return out;
}

void TreeSample::Map(VertexId point, int node) {
  if (point < 0) Fail(ErrorCode::kBadVertex, "negative point id");
  if (point >= static_cast<VertexId>(node_of.size())) node_of.resize(point + 1, -1);
  if (node_of[point] < 0) points.insert(std::lower_bound(points.begin(), points.end(), point), point);
  node_of[point] = node;
}

int TreeSample::Node(VertexId point) const {
  if (!Has(point)) Fail(ErrorCode::kBadVertex, "point " + std::to_string(point) + " is not mapped");
  return node_of[point];
}

nlohmann::json ToJson(const TreeSample& sample) {
  nlohmann::json doc;
  doc["nodes"] = sample.tree.num_nodes();
  std::vector<int> parent;
  std::vector<Length> len;
  for (int v = 0; v < sample.tree.num_nodes(); ++v) {
    parent.push_back(sample.tree.parent(v));
    len.push_back(sample.tree.length(v));
  }
  doc["parent"] = parent;
  doc["len"] = len;
  nlohmann::json map = nlohmann::json::array();
  for (VertexId p : sample.points) map.push_back({p, sample.node_of[p]});
  doc["map"] = std::move(map);
  return doc;
}

TreeSample TreeSampleFromJson(const nlohmann::json& doc) {
  TreeSample s;
  try {
    const int n = doc.at("nodes").get<int>();
    const auto parent = doc.at("parent").get<std::vector<int>>();
    const auto len = doc.at("len").get<std::vector<Length>>();
    if (static_cast<int>(parent.size()) != n || static_cast<int>(len.size()) != n || n < 1) {
      Fail(ErrorCode::kParseError, "tree arrays do not match node count");
    }
    for (int v = 1; v < n; ++v) {
      if (parent[v] >= v) Fail(ErrorCode::kParseError, "parents must precede children");
      s.tree.AddNode(parent[v], len[v]);
    }
    for (const auto& entry : doc.at("map")) s.Map(entry.at(0).get<VertexId>(), entry.at(1).get<int>());
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, e.what());
  }
  return s;
}

}  // namespace planegap
