#include "planegap/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "planegap/graph_io.hpp"

namespace planegap {

namespace {

// Editable edge list + rotation, turned into a PlaneGraph on demand. Edge
// ids and therefore dart ids are stable across edits.
struct MutablePlane {
  std::vector<Edge> edges;
  std::vector<std::vector<DartId>> rotation;
  std::vector<std::int64_t> labels;

  int num_vertices() const { return static_cast<int>(rotation.size()); }

  VertexId AddVertex() {
    rotation.emplace_back();
    labels.push_back(labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1);
    return num_vertices() - 1;
  }

  EdgeId AddEdge(VertexId u, VertexId v, Length length) {
    edges.push_back({u, v, length});
    return static_cast<EdgeId>(edges.size()) - 1;
  }

  VertexId tail(DartId d) const {
    const Edge& e = edges[EdgeOf(d)];
    return (d & 1) ? e.v : e.u;
  }

  void SetTail(DartId d, VertexId v) {
    Edge& e = edges[EdgeOf(d)];
    if (d & 1) {
      e.v = v;
    } else {
      e.u = v;
    }
  }

  PlaneGraph Build(std::span<const VertexId> terminals = {}) const {
    Graph g(num_vertices());
    for (const Edge& e : edges) g.AddEdge(e.u, e.v, e.length);
    PlaneGraph out(std::move(g));
    for (VertexId v = 0; v < num_vertices(); ++v) out.set_rotation(v, rotation[v]);
    out.set_labels(labels);
    out.set_terminals(std::vector<VertexId>(terminals.begin(), terminals.end()));
    return out;
  }

  static MutablePlane From(const PlaneGraph& graph) {
    MutablePlane m;
    const Graph& g = graph.graph();
    m.edges.assign(g.edges().begin(), g.edges().end());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      m.rotation.emplace_back(graph.rotation(v).begin(), graph.rotation(v).end());
    }
    m.labels.assign(graph.labels().begin(), graph.labels().end());
    return m;
  }
};

template <typename T>
std::size_t IndexOf(const std::vector<T>& items, const T& value) {
  return static_cast<std::size_t>(std::find(items.begin(), items.end(), value) - items.begin());
}

}  // namespace

std::vector<VertexId> DefaultAnchors(const FaceSet& faces, std::span<const int> cover) {
  std::vector<VertexId> anchors;
  for (int f : cover) anchors.push_back(faces.faces.at(f).vertices.front());
  return anchors;
}

SpanningPathTree BuildSpanningPathTree(const PlaneGraph& graph, const FaceSet& faces,
                                       std::span<const int> cover,
                                       std::optional<std::vector<VertexId>> anchors) {
  SpanningPathTree tree;
  tree.anchors = anchors ? *anchors : DefaultAnchors(faces, cover);
  if (tree.anchors.empty()) Fail(ErrorCode::kBadParams, "empty face cover");
  if (tree.anchors.size() != cover.size()) {
    Fail(ErrorCode::kBadParams, "one anchor per cover face is required");
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (!faces.faces.at(cover[i]).Contains(tree.anchors[i])) {
      Fail(ErrorCode::kBadParams, "anchor does not lie on its face");
    }
  }
  const Graph& g = graph.graph();
  tree.root = tree.anchors.front();
  const ShortestPathTree spt = Dijkstra(g, tree.root);
  std::vector<char> used_edge(g.num_edges(), 0);
  std::vector<char> used_vertex(g.num_vertices(), 0);
  used_vertex[tree.root] = 1;
  tree.paths.resize(tree.anchors.size());
  for (std::size_t i = 1; i < tree.anchors.size(); ++i) {
    const VertexId v = tree.anchors[i];
    if (spt.dist[v] == kInfinity) {
      Fail(ErrorCode::kDisconnectedAnchors, "anchor unreachable from the root");
    }
    for (VertexId x = v;; x = g.tail(spt.parent[x])) {
      tree.paths[i].push_back(x);
      used_vertex[x] = 1;
      if (spt.parent[x] == kNoDart) break;
      used_edge[EdgeOf(spt.parent[x])] = 1;
    }
  }
  tree.paths[0] = {tree.root};
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (used_edge[e]) tree.edges.push_back(e);
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (used_vertex[v]) tree.vertices.push_back(v);
  }
  return tree;
}

TreeCutResult TreeCut(const PlaneGraph& graph, std::span<const EdgeId> tree_edges) {
  const Graph& g = graph.graph();
  const int n = g.num_vertices();
  const int m = g.num_edges();
  TreeCutResult result;
  result.tree_edges.assign(tree_edges.begin(), tree_edges.end());

  std::vector<char> in_tree(m, 0);
  std::vector<int> tree_degree(n, 0);
  for (EdgeId e : tree_edges) {
    if (e < 0 || e >= m || in_tree[e]) {
      Fail(ErrorCode::kPNotSubgraph, "tree edge " + std::to_string(e) + " is not an edge of G");
    }
    in_tree[e] = 1;
    if (g.edge(e).u == g.edge(e).v) Fail(ErrorCode::kPNotTree, "tree contains a loop");
    ++tree_degree[g.edge(e).u];
    ++tree_degree[g.edge(e).v];
  }
  // Acyclic and connected: union-find plus the vertex/edge count.
  {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (EdgeId e : tree_edges) {
      const int a = find(g.edge(e).u);
      const int b = find(g.edge(e).v);
      if (a == b) Fail(ErrorCode::kPNotTree, "tree edges contain a cycle");
      parent[a] = b;
    }
    const long vertices = std::count_if(tree_degree.begin(), tree_degree.end(),
                                        [](int d) { return d > 0; });
    if (!tree_edges.empty() && vertices != static_cast<long>(tree_edges.size()) + 1) {
      Fail(ErrorCode::kPNotTree, "tree edges are not connected");
    }
  }

  result.copy_of.resize(n);
  std::iota(result.copy_of.begin(), result.copy_of.end(), 0);
  result.visit_index.assign(n, -1);
  if (tree_edges.empty()) {
    result.graph = graph;
    result.cut = false;
    result.dart_map.resize(g.num_darts());
    std::iota(result.dart_map.begin(), result.dart_map.end(), 0);
    return result;
  }
  result.cut = true;

  auto is_tree_dart = [&](DartId d) { return in_tree[EdgeOf(d)] != 0; };

  // For each dart at a tree vertex: the tree dart opening its wedge, and for
  // tree darts the previous / next tree dart in rotation order.
  std::vector<DartId> wedge_of(g.num_darts(), kNoDart);
  std::vector<DartId> prev_tree(g.num_darts(), kNoDart);
  std::vector<DartId> next_tree(g.num_darts(), kNoDart);
  for (VertexId v = 0; v < n; ++v) {
    if (tree_degree[v] == 0) continue;
    auto rot = graph.rotation(v);
    const int k = static_cast<int>(rot.size());
    int first = -1;
    for (int i = 0; i < k; ++i) {
      if (is_tree_dart(rot[i])) {
        first = i;
        break;
      }
    }
    DartId current = kNoDart;
    DartId last_tree = kNoDart;
    for (int step = 0; step < k; ++step) {
      const DartId d = rot[(first + step) % k];
      if (is_tree_dart(d)) {
        if (last_tree != kNoDart) {
          prev_tree[d] = last_tree;
          next_tree[last_tree] = d;
        }
        last_tree = d;
        current = d;
      }
      wedge_of[d] = current;
    }
    const DartId head_dart = rot[first];
    prev_tree[head_dart] = last_tree;
    next_tree[last_tree] = head_dart;
  }

  // Walk around the tree: arriving along d, leave by the tree dart preceding
  // Twin(d).
  VertexId start_vertex = kNoVertex;
  for (VertexId v = 0; v < n && start_vertex == kNoVertex; ++v) {
    if (tree_degree[v] > 0) start_vertex = v;
  }
  DartId start = kNoDart;
  for (DartId d : graph.rotation(start_vertex)) {
    if (is_tree_dart(d)) {
      start = d;
      break;
    }
  }
  std::vector<DartId> walk;
  for (DartId d = start;;) {
    walk.push_back(d);
    d = prev_tree[Twin(d)];
    if (d == start) break;
    if (walk.size() > 2 * tree_edges.size()) {
      Fail(ErrorCode::kInvariantViolation, "tree walk did not close");
    }
  }
  if (walk.size() != 2 * tree_edges.size()) {
    Fail(ErrorCode::kInvariantViolation, "tree walk has the wrong length");
  }

  // One copy per wedge, numbered by first visit.
  std::vector<VertexId> wedge_vertex(g.num_darts(), kNoVertex);
  std::vector<int> visits(n, 0);
  int next_id = n;
  for (DartId d : walk) {
    const VertexId v = g.tail(d);
    VertexId id;
    if (visits[v] == 0) {
      id = v;
      result.visit_index[v] = 0;
    } else {
      id = next_id++;
      result.copy_of.push_back(v);
      result.visit_index.push_back(visits[v]);
    }
    ++visits[v];
    wedge_vertex[d] = id;
  }
  auto vertex_of_dart = [&](DartId d) {
    const VertexId t = g.tail(d);
    return tree_degree[t] == 0 ? t : wedge_vertex[wedge_of[d]];
  };

  MutablePlane out;
  out.rotation.resize(next_id);
  out.labels.assign(graph.labels().begin(), graph.labels().end());
  std::int64_t fresh = *std::max_element(out.labels.begin(), out.labels.end()) + 1;
  for (int i = n; i < next_id; ++i) out.labels.push_back(fresh++);

  result.dart_map.assign(g.num_darts(), kNoDart);
  EdgeId extra = m;
  out.edges.resize(m + tree_edges.size());
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& edge = g.edge(e);
    if (!in_tree[e]) {
      out.edges[e] = {vertex_of_dart(2 * e), vertex_of_dart(2 * e + 1), edge.length};
      result.dart_map[2 * e] = 2 * e;
      result.dart_map[2 * e + 1] = 2 * e + 1;
      continue;
    }
    // Copy for the side traversed by dart 2e, then for dart 2e+1.
    out.edges[e] = {wedge_vertex[prev_tree[2 * e]], wedge_vertex[2 * e + 1], edge.length};
    out.edges[extra] = {wedge_vertex[prev_tree[2 * e + 1]], wedge_vertex[2 * e], edge.length};
    result.dart_map[2 * e] = 2 * e;
    result.dart_map[2 * e + 1] = 2 * extra;
    ++extra;
  }

  for (VertexId v = 0; v < n; ++v) {
    if (tree_degree[v] == 0) {
      out.rotation[v].assign(graph.rotation(v).begin(), graph.rotation(v).end());
      continue;
    }
    auto rot = graph.rotation(v);
    const int k = static_cast<int>(rot.size());
    for (int i = 0; i < k; ++i) {
      const DartId p = rot[i];
      if (!is_tree_dart(p)) continue;
      const DartId q = next_tree[p];
      std::vector<DartId> order = {Twin(result.dart_map[Twin(p)])};
      for (int step = 1; step < k; ++step) {
        const DartId x = rot[(i + step) % k];
        if (x == q) break;
        order.push_back(result.dart_map[x]);
      }
      order.push_back(result.dart_map[q]);
      out.rotation[wedge_vertex[p]] = std::move(order);
    }
  }

  for (DartId d : walk) result.new_face.push_back(Twin(result.dart_map[Twin(d)]));
  for (DartId d : result.new_face) result.cycle.push_back(out.tail(d));

  std::vector<VertexId> terms;
  for (VertexId v = 0; v < next_id; ++v) {
    if (graph.IsTerminal(result.copy_of[v])) terms.push_back(v);
  }
  result.graph = out.Build(terms);

  for (std::size_t i = 0; i < result.new_face.size(); ++i) {
    const DartId expect = result.new_face[(i + 1) % result.new_face.size()];
    if (result.graph.FaceNext(result.new_face[i]) != expect) {
      Fail(ErrorCode::kInvariantViolation, "new face walk is inconsistent");
    }
  }
  return result;
}

SplitStarResult SplitAndStar(const TreeCutResult& cut, const FaceSet& faces,
                             std::span<const int> cover) {
  if (!cut.cut || cut.new_face.empty()) {
    Fail(ErrorCode::kFaceRegistryMissing, "no new face: the tree cut was not performed");
  }
  MutablePlane cur = MutablePlane::From(cut.graph);
  SplitStarResult result;
  result.copy_of = cut.copy_of;
  std::vector<char> in_a(cur.num_vertices(), 0);
  for (VertexId v : cut.cycle) in_a[v] = 1;
  std::vector<char> tree_copy = in_a;
  std::vector<DartId> boundary = cut.new_face;

  for (int f : cover) {
    if (f < 0 || f >= static_cast<int>(faces.faces.size()) || faces.faces[f].darts.empty()) {
      Fail(ErrorCode::kFaceRegistryMissing, "cover face " + std::to_string(f) + " has no darts");
    }
    const DartId rep = cut.dart_map.at(faces.faces[f].darts.front());
    if (rep == kNoDart) Fail(ErrorCode::kFaceRegistryMissing, "cover face lost in the cut");
    result.face_registry.push_back(rep);
  }

  for (std::size_t i = 0; i < cover.size(); ++i) {
    const PlaneGraph pg = cur.Build();
    const FaceSet traced = TraceFaces(pg);
    const Face& face = traced.faces[traced.FaceOf(result.face_registry[i])];
    std::vector<VertexId> on_a;
    for (VertexId v : face.vertices) {
      if (in_a[v]) on_a.push_back(v);
    }
    if (on_a.size() >= 2) continue;
    if (on_a.empty()) {
      Fail(ErrorCode::kInvariantViolation, "cover face does not touch the cut tree");
    }
    const VertexId c = on_a.front();

    // Corner of the cover face at c.
    std::size_t t = 0;
    while (cur.tail(face.darts[t]) != c) ++t;
    const DartId face_in = face.darts[(t + face.darts.size() - 1) % face.darts.size()];
    // Corner of the new face at c.
    std::size_t q = 0;
    while (cur.tail(boundary[q]) != c) ++q;
    const DartId new_out = boundary[q];
    const DartId new_in = boundary[(q + boundary.size() - 1) % boundary.size()];

    std::vector<DartId> rot = cur.rotation[c];
    std::rotate(rot.begin(), rot.begin() + IndexOf(rot, new_out), rot.end());
    if (rot.back() != Twin(new_in)) {
      Fail(ErrorCode::kInvariantViolation, "new face corner is not consecutive");
    }
    const std::size_t j = IndexOf(rot, Twin(face_in));
    if (j + 1 >= rot.size()) Fail(ErrorCode::kInvariantViolation, "cover face corner coincides with new face");

    const VertexId c2 = cur.AddVertex();
    result.copy_of.push_back(result.copy_of[c]);
    in_a.push_back(1);
    tree_copy.push_back(0);
    const EdgeId e0 = cur.AddEdge(c, c2, 0.0);
    std::vector<DartId> first(rot.begin(), rot.begin() + j + 1);
    std::vector<DartId> second(rot.begin() + j + 1, rot.end());
    for (DartId x : second) cur.SetTail(x, c2);
    first.push_back(2 * e0);
    second.push_back(2 * e0 + 1);
    cur.rotation[c] = std::move(first);
    cur.rotation[c2] = std::move(second);
    boundary.insert(boundary.begin() + static_cast<std::ptrdiff_t>(q), 2 * e0 + 1);
    result.splits.push_back({cover[i], result.copy_of[c], c, c2, e0});
  }

  result.new_face = boundary;
  for (DartId d : boundary) result.boundary.push_back(cur.tail(d));

  // Zero-length stars inside the new face joining the tree-cut copies of
  // each vertex. The boundary walk nests copies, so stars never cross.
  std::vector<std::vector<std::size_t>> by_original(
      *std::max_element(result.copy_of.begin(), result.copy_of.end()) + 1);
  for (std::size_t k = 0; k < result.boundary.size(); ++k) {
    const VertexId c = result.boundary[k];
    if (tree_copy[c]) by_original[result.copy_of[c]].push_back(k);
  }
  result.is_star_center.assign(cur.num_vertices(), 0);
  for (VertexId v = 0; v < static_cast<VertexId>(by_original.size()); ++v) {
    const auto& where = by_original[v];
    if (where.size() < 2) continue;
    StarRecord star;
    star.original = v;
    star.center = cur.AddVertex();
    result.copy_of.push_back(v);
    result.is_star_center.push_back(1);
    std::vector<DartId> center_rotation;
    for (std::size_t k : where) {
      const VertexId c = result.boundary[k];
      const EdgeId e = cur.AddEdge(c, star.center, 0.0);
      auto& rot = cur.rotation[c];
      rot.insert(rot.begin() + static_cast<std::ptrdiff_t>(IndexOf(rot, boundary[k])), 2 * e);
      center_rotation.push_back(2 * e + 1);
      star.leaves.push_back(c);
      star.edges.push_back(e);
    }
    std::reverse(center_rotation.begin(), center_rotation.end());
    cur.rotation[star.center] = std::move(center_rotation);
    result.stars.push_back(std::move(star));
  }

  std::vector<VertexId> terms;
  for (VertexId v = 0; v < cur.num_vertices(); ++v) {
    if (!result.is_star_center[v] && cut.graph.IsTerminal(result.copy_of[v])) terms.push_back(v);
  }
  result.graph = cur.Build(terms);
  return result;
}

bool CheckMetricPreserved(const Graph& original, const Graph& augmented,
                          std::span<const VertexId> copy_of, double tolerance) {
  const DistOracle d1 = DistOracle::AllPairs(original);
  const DistOracle d2 = DistOracle::AllPairs(augmented);
  const int n2 = augmented.num_vertices();
  if (static_cast<int>(copy_of.size()) != n2) return false;
  for (int a = 0; a < n2; ++a) {
    for (int b = a + 1; b < n2; ++b) {
      const Length x = d1(copy_of[a], copy_of[b]);
      const Length y = d2(a, b);
      if (x == kInfinity || y == kInfinity) {
        if (x != y) return false;
        continue;
      }
      if (std::abs(x - y) > tolerance) return false;
    }
  }
  return true;
}

CliqueAugmented CliqueAugment(const Graph& g2, std::span<const VertexId> boundary,
                              const DistOracle& original_distances,
                              std::span<const VertexId> copy_of) {
  CliqueAugmented h;
  h.graph = g2;
  h.first_clique_edge = g2.num_edges();
  h.a_set.assign(boundary.begin(), boundary.end());
  std::sort(h.a_set.begin(), h.a_set.end());
  h.a_set.erase(std::unique(h.a_set.begin(), h.a_set.end()), h.a_set.end());
  h.in_a.assign(g2.num_vertices(), 0);
  for (VertexId a : h.a_set) h.in_a[a] = 1;
  for (std::size_t i = 0; i < h.a_set.size(); ++i) {
    for (std::size_t j = i + 1; j < h.a_set.size(); ++j) {
      h.graph.AddEdge(h.a_set[i], h.a_set[j],
                      original_distances(copy_of[h.a_set[i]], copy_of[h.a_set[j]]));
    }
  }
  return h;
}

SurgeryTrace RunSurgery(const PlaneGraph& graph) {
  RequireValid(graph);
  SurgeryTrace trace;
  trace.input = graph;
  trace.input_faces = TraceFaces(graph);
  trace.cover = ComputeFaceCover(trace.input_faces, graph.terminals(), graph.num_vertices());
  if (trace.cover.gamma >= 2) {
    std::vector<VertexId> anchors;
    const VertexId root = trace.input_faces.faces[trace.cover.faces.front()].vertices.front();
    anchors.push_back(root);
    for (std::size_t i = 1; i < trace.cover.faces.size(); ++i) {
      const auto& verts = trace.input_faces.faces[trace.cover.faces[i]].vertices;
      VertexId pick = verts.front();
      for (VertexId v : verts) {
        if (v != root) {
          pick = v;
          break;
        }
      }
      anchors.push_back(pick);
    }
    trace.tree = BuildSpanningPathTree(graph, trace.input_faces, trace.cover.faces, anchors);
  } else {
    trace.tree.root = graph.terminals().empty() ? 0 : graph.terminals().front();
    trace.tree.vertices = {trace.tree.root};
  }
  trace.cut = TreeCut(graph, trace.tree.edges);
  if (trace.cut.cut) {
    trace.split = SplitAndStar(trace.cut, trace.input_faces, trace.cover.faces);
  }
  const auto terms = trace.g2().terminals();
  trace.terminals.assign(terms.begin(), terms.end());
  return trace;
}

nlohmann::json ToJson(const SurgeryTrace& trace) {
  nlohmann::json doc;
  doc["input"] = ToJson(trace.input);
  doc["gamma"] = trace.cover.gamma;
  doc["cover_exact"] = trace.cover.exact;
  nlohmann::json cover = nlohmann::json::array();
  for (int f : trace.cover.faces) {
    nlohmann::json walk = nlohmann::json::array();
    for (VertexId v : trace.input_faces.faces[f].walk) walk.push_back(trace.input.label(v));
    cover.push_back({{"face", f}, {"walk", walk}});
  }
  doc["cover"] = std::move(cover);
  doc["root"] = trace.tree.root;
  doc["anchors"] = trace.tree.anchors;
  doc["tree_edges"] = trace.tree.edges;
  doc["g1"] = ToJson(trace.cut.graph);
  doc["cycle"] = trace.cut.cycle;
  if (trace.split) {
    const SplitStarResult& s = *trace.split;
    doc["g2"] = ToJson(s.graph);
    doc["boundary"] = s.boundary;
    nlohmann::json splits = nlohmann::json::array();
    for (const SplitRecord& r : s.splits) {
      splits.push_back({{"face", r.face}, {"vertex", r.original},
                        {"first", r.first}, {"second", r.second}, {"edge", r.edge}});
    }
    doc["splits"] = std::move(splits);
    nlohmann::json stars = nlohmann::json::array();
    for (const StarRecord& r : s.stars) {
      stars.push_back({{"vertex", r.original}, {"center", r.center}, {"leaves", r.leaves}});
    }
    doc["stars"] = std::move(stars);
  } else {
    doc["g2"] = ToJson(trace.cut.graph);
    doc["boundary"] = nlohmann::json::array();
  }
  doc["copy_of"] = std::vector<VertexId>(trace.copy_of().begin(), trace.copy_of().end());
  doc["terminals"] = trace.terminals;
  return doc;
}

}  // namespace planegap
