#include "planegap/thin_maps.hpp"

#include <algorithm>
#include <cmath>

#include "planegap/error.hpp"
#include "planegap/faces.hpp"
#include "planegap/parallel.hpp"
#include "planegap/stats.hpp"
#include "planegap/trees.hpp"

namespace planegap {

ThinnessReport Thinness(const ThinMap& f, const Graph& graph) {
  const MetricTree& t = f.tree;
  ThinnessReport report;
  report.per_vertex.assign(graph.num_vertices(), 0);
  std::vector<int> stamp(t.num_nodes(), -1);  // child node whose parent edge is marked
  std::vector<int> degree(t.num_nodes(), 0);
  std::vector<int> marked, touched;
  for (VertexId u = 0; u < graph.num_vertices(); ++u) {
    const int root = f.Node(u);
    marked.clear();
    auto climb = [&](int x, int stop) {
      for (; x != stop; x = t.parent(x)) {
        if (stamp[x] == u) continue;
        stamp[x] = u;
        marked.push_back(x);
      }
    };
    for (DartId d : graph.out_darts(u)) {
      const int target = f.Node(graph.head(d));
      if (target == root) continue;
      const int lca = t.Lca(root, target);
      climb(target, lca);
      climb(root, lca);
    }
    touched.clear();
    for (int c : marked) {
      touched.push_back(c);
      touched.push_back(t.parent(c));
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int x : touched) degree[x] = 0;
    for (int c : marked) {
      ++degree[c];
      ++degree[t.parent(c)];
    }
    int leaves = 0;
    for (int x : touched) {
      if (x != root && degree[x] == 1) ++leaves;
    }
    report.per_vertex[u] = leaves;
    report.max = std::max(report.max, leaves);
  }
  return report;
}

double GradNorm(const ThinMap& f, const Graph& graph, VertexId u, double tau) {
  if (!(tau > 0)) Fail(ErrorCode::kBadParams, "tau must be positive");
  double best = 0;
  for (DartId d : graph.out_darts(u)) {
    const double len = graph.length(d);
    if (len < tau || len > 2 * tau || !(len > 0)) continue;
    const VertexId v = graph.head(d);
    if (v == u) continue;
    best = std::max(best, f.Distance(u, v) / len);
  }
  return best;
}

std::vector<double> CandidateScales(const Graph& graph) {
  std::vector<double> taus;
  for (const Edge& e : graph.edges()) {
    if (e.length > 0 && std::isfinite(e.length)) {
      taus.push_back(e.length / 2);
      taus.push_back(e.length);
    }
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  return taus;
}

LineMap MakeLineMap(const Graph& graph, std::span<const VertexId> face) {
  if (face.empty()) Fail(ErrorCode::kBadParams, "face has no vertices");
  const ShortestPathTree spt = Dijkstra(graph, face);
  LineMap out;
  out.value = spt.dist;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    if (!std::isfinite(out.value[v])) {
      Fail(ErrorCode::kDisconnected, "vertex " + std::to_string(v) + " cannot reach the face");
    }
  }
  std::vector<double> levels = out.value;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<int> node(levels.size(), 0);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    node[k] = out.map.tree.AddNode(node[k - 1], levels[k] - levels[k - 1]);
  }
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const auto k = std::lower_bound(levels.begin(), levels.end(), out.value[v]) - levels.begin();
    out.map.Map(v, node[k]);
  }
  return out;
}

ThinMap MakeFaceTreeMap(const PlaneGraph& graph, std::span<const VertexId> face, Rng& rng,
                        const DistanceMatrix& distances) {
  if (face.empty()) Fail(ErrorCode::kBadParams, "face has no vertices");
  std::vector<VertexId> sorted(face.begin(), face.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  PlaneGraph host = graph;
  host.set_terminals(sorted);
  ThinMap map = OsToTree(host, rng, &distances);
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    if (std::binary_search(sorted.begin(), sorted.end(), v)) continue;
    VertexId nearest = sorted.front();
    for (VertexId w : sorted) {
      if (distances(v, w) < distances(v, nearest)) nearest = w;
    }
    if (!std::isfinite(distances(v, nearest))) {
      Fail(ErrorCode::kDisconnected, "vertex " + std::to_string(v) + " cannot reach the face");
    }
    map.Map(v, map.tree.AddNode(map.Node(nearest), distances(v, nearest)));
  }
  return map;
}

MultiFaceMixture::MultiFaceMixture(PlaneGraph graph, std::vector<std::vector<VertexId>> faces)
    : graph_(std::move(graph)), faces_(std::move(faces)), distances_(DistanceMatrix::AllPairs(graph_.graph())) {
  if (faces_.empty()) Fail(ErrorCode::kBadParams, "mixture needs at least one face");
  for (auto& f : faces_) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    lines_.push_back(MakeLineMap(graph_.graph(), f));
  }
}

MultiFaceMixture MultiFaceMixture::FromCover(const PlaneGraph& graph) {
  const FaceSet faces = TraceFaces(graph);
  const FaceCover cover = ComputeFaceCover(faces, graph.terminals(), graph.num_vertices());
  if (cover.gamma == 0) Fail(ErrorCode::kEmptyTerminals, "no terminals to cover");
  std::vector<std::vector<VertexId>> chosen;
  for (int i : cover.faces) chosen.push_back(faces.faces[i].vertices);
  return MultiFaceMixture(graph, std::move(chosen));
}

ThinMap MultiFaceMixture::Component(int option, Rng& rng) const {
  if (option < 0 || option >= 2 * gamma()) Fail(ErrorCode::kBadParams, "mixture option out of range");
  if (option < gamma()) return MakeFaceTreeMap(graph_, faces_[option], rng, distances_);
  return lines_[option - gamma()].map;
}

ThinMap MultiFaceMixture::Sample(Rng& rng, int* option) const {
  const int k = static_cast<int>(rng.UniformInt(0, 2 * gamma() - 1));
  if (option) *option = k;
  return Component(k, rng);
}

namespace {

constexpr std::uint64_t kMixtureStream = 1u << 20;

// Per-draw statistics: pair distances, then gradients per (vertex, scale).
struct Accumulator {
  std::vector<RunningStats> pair;
  std::vector<RunningStats> grad;
};

void Collect(const ThinMap& f, const Graph& g, std::span<const std::pair<VertexId, VertexId>> pairs,
             std::span<const double> taus, std::vector<double>& out) {
  out.clear();
  for (auto [u, v] : pairs) out.push_back(f.Distance(u, v));
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (double tau : taus) out.push_back(GradNorm(f, g, v, tau));
  }
}

// Runs `draw` for every sample in parallel and folds the collected values
// in sample order.
template <typename Draw>
Accumulator Accumulate(long samples, std::size_t num_pairs, std::size_t num_grads, Draw&& draw) {
  std::vector<std::vector<double>> values(samples);
  ParallelFor(static_cast<std::size_t>(samples), [&](std::size_t s) { draw(s, values[s]); });
  Accumulator acc;
  acc.pair.resize(num_pairs);
  acc.grad.resize(num_grads);
  for (const auto& row : values) {
    for (std::size_t k = 0; k < num_pairs; ++k) acc.pair[k].Add(row[k]);
    for (std::size_t k = 0; k < num_grads; ++k) acc.grad[k].Add(row[num_pairs + k]);
  }
  return acc;
}

double MaxMean(const std::vector<RunningStats>& stats) {
  double best = 0;
  for (const RunningStats& s : stats) best = std::max(best, s.mean());
  return best;
}

}  // namespace

MixtureReport MeasureMixture(const MultiFaceMixture& mixture,
                             std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                             std::uint64_t seed) {
  if (samples < 2) Fail(ErrorCode::kBadParams, "at least 2 samples are required");
  const Graph& g = mixture.graph().graph();
  const DistanceMatrix& d = mixture.distances();
  const std::vector<double> taus = CandidateScales(g);
  const std::size_t num_grads = static_cast<std::size_t>(g.num_vertices()) * taus.size();
  const int gamma = mixture.gamma();

  MixtureReport report;
  report.gamma = gamma;
  report.samples = samples;
  for (int i = 0; i < gamma; ++i) {
    report.line_thinness = std::max(report.line_thinness, Thinness(mixture.line_map(i).map, g).max);
  }

  // Face tree maps: K0 over pairs inside the face (terminals only when the
  // graph has any), L0 over all vertices and scales.
  for (int i = 0; i < gamma; ++i) {
    std::vector<VertexId> points;
    for (VertexId v : mixture.faces()[i]) {
      if (mixture.graph().terminals().empty() || mixture.graph().IsTerminal(v)) points.push_back(v);
    }
    const auto face_pairs = PairsOf(points);
    const Accumulator acc = Accumulate(samples, face_pairs.size(), num_grads, [&](std::size_t s, std::vector<double>& out) {
      Rng rng = Rng(seed, s).Substream(i);
      Collect(mixture.Component(i, rng), g, face_pairs, taus, out);
    });
    for (std::size_t k = 0; k < face_pairs.size(); ++k) {
      const double dist = d(face_pairs[k].first, face_pairs[k].second);
      if (dist > 0 && std::isfinite(dist)) report.k0 = std::max(report.k0, dist / acc.pair[k].mean());
    }
    report.l0 = std::max(report.l0, MaxMean(acc.grad));
  }

  std::vector<int> thin(samples, 0);
  const Accumulator mix = Accumulate(samples, pairs.size(), num_grads, [&](std::size_t s, std::vector<double>& out) {
    Rng rng = Rng(seed, s).Substream(kMixtureStream);
    const ThinMap f = mixture.Sample(rng);
    thin[s] = Thinness(f, g).max;
    Collect(f, g, pairs, taus, out);
  });
  report.max_thinness = *std::max_element(thin.begin(), thin.end());
  report.l_hat = MaxMean(mix.grad);

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    MixturePair p;
    p.u = pairs[k].first;
    p.v = pairs[k].second;
    p.distance = d(p.u, p.v);
    const MeanSummary summary = mix.pair[k].Summary();
    p.mean = summary.mean;
    p.stderr_ = summary.stderr_;
    if (!(p.distance > 0) || !std::isfinite(p.distance)) continue;
    report.k_hat = std::max(report.k_hat, p.distance / p.mean);
    p.bound = p.distance / (8.0 * gamma * report.k0 * report.l0);
    // Case split: u on face F_i, u' the face vertex nearest to v.
    for (int i = 0; i < gamma && p.face < 0; ++i) {
      const auto& f = mixture.faces()[i];
      if (std::binary_search(f.begin(), f.end(), p.u)) {
        p.face = i;
      } else if (std::binary_search(f.begin(), f.end(), p.v)) {
        p.face = i;
        std::swap(p.u, p.v);
      }
    }
    if (p.face >= 0) {
      double near = kInfinity;
      for (VertexId w : mixture.faces()[p.face]) near = std::min(near, d(w, p.v));
      if (near >= p.distance / (4.0 * report.k0 * report.l0)) {
        p.proof_case = 1;
        p.case_bound = p.bound;
      } else {
        p.proof_case = 2;
        p.case_bound = p.distance / (4.0 * gamma * report.k0);
      }
    }
    const double sigma = p.mean > 0 ? p.stderr_ / p.mean : 0.0;
    p.holds = p.mean >= p.bound * (1 - 2 * sigma);
    p.case_holds = p.proof_case == 0 || p.mean >= p.case_bound * (1 - 2 * sigma);
    report.all_hold = report.all_hold && p.holds && p.case_holds;
    report.pairs.push_back(p);
  }
  return report;
}

}  // namespace planegap
