#include "planegap/pipeline.hpp"

#include <algorithm>
#include <map>

#include "planegap/error.hpp"
#include "planegap/faces.hpp"

namespace planegap {

namespace {

// Copies `src` into `dest` re-rooted at `src_root`, whose image is the
// existing node `attach`. Returns the node map.
std::vector<int> Graft(MetricTree& dest, int attach, const MetricTree& src, int src_root) {
  const int n = src.num_nodes();
  std::vector<std::vector<std::pair<int, Length>>> adj(n);
  for (int v = 1; v < n; ++v) {
    adj[v].push_back({src.parent(v), src.length(v)});
    adj[src.parent(v)].push_back({v, src.length(v)});
  }
  std::vector<int> map(n, -1);
  map[src_root] = attach;
  std::vector<int> queue = {src_root};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int u = queue[i];
    for (auto [w, len] : adj[u]) {
      if (map[w] >= 0) continue;
      map[w] = dest.AddNode(map[u], len);
      queue.push_back(w);
    }
  }
  return map;
}

// G2 restricted to `keep` with the inherited rotation system.
PlaneGraph InducedPlane(const PlaneGraph& g, const std::vector<char>& keep) {
  const Graph& base = g.graph();
  std::vector<VertexId> old_to_new(base.num_vertices(), kNoVertex);
  int n = 0;
  for (VertexId v = 0; v < base.num_vertices(); ++v) {
    if (keep[v]) old_to_new[v] = n++;
  }
  Graph out(n);
  std::vector<EdgeId> edge_map(base.num_edges(), -1);
  for (EdgeId e = 0; e < base.num_edges(); ++e) {
    const Edge& edge = base.edge(e);
    if (keep[edge.u] && keep[edge.v]) {
      edge_map[e] = out.AddEdge(old_to_new[edge.u], old_to_new[edge.v], edge.length);
    }
  }
  PlaneGraph plane(std::move(out));
  for (VertexId v = 0; v < base.num_vertices(); ++v) {
    if (!keep[v]) continue;
    std::vector<DartId> rotation;
    for (DartId d : g.rotation(v)) {
      const EdgeId e = edge_map[EdgeOf(d)];
      if (e >= 0) rotation.push_back(2 * e + (d & 1));
    }
    plane.set_rotation(old_to_new[v], std::move(rotation));
  }
  return plane;
}

}  // namespace

bool BranchTerminalsOnOneFace(const PlaneGraph& g2, std::span<const VertexId> a,
                              std::span<const VertexId> terminals) {
  const int n = g2.num_vertices();
  std::vector<char> in_a(n, 0);
  for (VertexId x : a) in_a[x] = 1;
  for (VertexId x : a) {
    std::vector<char> keep(n, 0);
    std::vector<VertexId> new_id(n, kNoVertex);
    int next = 0;
    for (VertexId v = 0; v < n; ++v) {
      keep[v] = !in_a[v] || v == x;
      if (keep[v]) new_id[v] = next++;
    }
    const PlaneGraph branch = InducedPlane(g2, keep);
    const FaceSet faces = TraceFaces(branch);
    std::vector<int> comp;
    const int count = branch.graph().Components(comp);
    std::vector<std::vector<VertexId>> by_component(count);
    for (VertexId t : terminals) {
      if (keep[t]) by_component[comp[new_id[t]]].push_back(new_id[t]);
    }
    for (const auto& group : by_component) {
      if (group.size() <= 1) continue;
      bool found = false;
      for (const Face& f : faces.faces) {
        found = std::all_of(group.begin(), group.end(), [&f](VertexId t) { return f.Contains(t); });
        if (found) break;
      }
      if (!found) return false;
    }
  }
  return true;
}

TerminalTreeEmbedder::TerminalTreeEmbedder(const PlaneGraph& graph, EmbedderOptions options)
    : graph_(graph), options_(options) {
  RequireValid(graph_);
  if (graph_.terminals().empty()) Fail(ErrorCode::kEmptyTerminals, "instance has no terminals");
  distances_ = DistanceMatrix::AllPairs(graph_.graph());
  gamma_ = ComputeFaceCover(graph_, graph_.terminals()).gamma;
  if (gamma_ <= 1) return;

  trace_ = RunSurgery(graph_);
  if (!trace_->split) {
    Fail(ErrorCode::kInvariantViolation, "cover needs several faces but the cut tree is trivial");
  }
  const PlaneGraph& g2 = trace_->g2();
  const auto copy_of = trace_->copy_of();
  a_set_.assign(trace_->boundary().begin(), trace_->boundary().end());
  std::sort(a_set_.begin(), a_set_.end());
  a_set_.erase(std::unique(a_set_.begin(), a_set_.end()), a_set_.end());
  h_terminals_ = trace_->terminals;
  h_terminal_.assign(g2.num_vertices(), 0);
  for (VertexId t : h_terminals_) h_terminal_[t] = 1;
  if (!BranchTerminalsOnOneFace(g2, a_set_, h_terminals_)) {
    Fail(ErrorCode::kInvariantViolation, "branch terminals are not on one face");
  }

  const CliqueAugmented h = CliqueAugment(g2.graph(), a_set_, distances_, copy_of);
  peel_ = std::make_unique<PeelSampler>(h.graph, a_set_, options_.scheme);
  const PeeledGraph& peeled = peel_->peeled();
  for (VertexId x : a_set_) {
    Branch b;
    b.vertices = peeled.rest;
    b.vertices.push_back(x);
    b.local.assign(g2.num_vertices(), -1);
    for (std::size_t i = 0; i < b.vertices.size(); ++i) b.local[b.vertices[i]] = static_cast<int>(i);
    b.metric = DistanceMatrix::AllPairs(h.graph.Induced(b.vertices));
    branches_.push_back(std::move(b));
  }
  tree_paths_ = trace_->tree.paths;
}

TreeSample TerminalTreeEmbedder::Sample(Rng& rng, EmbedDetails* details) const {
  TreeSample out;
  if (!trace_) {
    out = OsToTree(graph_, rng, &distances_);
  } else {
    Rng psi_rng = rng.Substream(0);
    Rng nu_rng = rng.Substream(1);
    const PeeledGraph& peeled = peel_->peeled();
    const auto copy_of = trace_->copy_of();
    const SelectorMap psi = peel_->Sample(psi_rng);

    // Tree on A: path-union tree on V(P), each copy hanging at length 0.
    const TreeSample nu = PathUnionEmbed(graph_.graph(), tree_paths_, nu_rng, &distances_);
    MetricTree& tree = out.tree;
    for (int v = 1; v < nu.tree.num_nodes(); ++v) tree.AddNode(nu.tree.parent(v), nu.tree.length(v));
    std::vector<int> hat_node(a_set_.size());
    for (std::size_t i = 0; i < a_set_.size(); ++i) hat_node[i] = tree.AddNode(nu.Node(copy_of[a_set_[i]]), 0.0);

    std::vector<std::vector<VertexId>> selected(a_set_.size());
    for (VertexId t : h_terminals_) {
      if (peeled.a_index[t] < 0) selected[peeled.branch[psi.image[t]]].push_back(t);
    }
    std::vector<int> node_of_h(h_terminal_.size(), -1);
    for (std::size_t i = 0; i < a_set_.size(); ++i) node_of_h[a_set_[i]] = hat_node[i];
    for (std::size_t i = 0; i < a_set_.size(); ++i) {
      if (selected[i].empty()) continue;
      if (details) details->used_branches.push_back(a_set_[i]);
      const Branch& b = branches_[i];
      std::vector<VertexId> names = selected[i];
      names.push_back(a_set_[i]);
      std::sort(names.begin(), names.end());
      std::vector<VertexId> rows;
      for (VertexId v : names) rows.push_back(b.local[v]);
      Rng branch_rng = rng.Substream(2 + i);
      const TreeSample bt = FrtEmbed(b.metric.Restrict(rows), branch_rng, names);
      const std::vector<int> map = Graft(tree, hat_node[i], bt.tree, bt.Node(a_set_[i]));
      for (VertexId v : selected[i]) node_of_h[v] = map[bt.Node(v)];
    }
    for (VertexId t : graph_.terminals()) out.Map(t, node_of_h[t]);
    if (details) {
      details->psi = psi;
      details->core_tree = TreeSample{};
      details->core_tree.tree = tree;
      for (std::size_t i = 0; i < a_set_.size(); ++i) details->core_tree.Map(a_set_[i], hat_node[i]);
    }
  }
  if (options_.certify && !Dominates(out, distances_, options_.tolerance)) {
    Fail(ErrorCode::kDominationViolation, "sampled tree contracts a terminal pair");
  }
  return out;
}

}  // namespace planegap
