// End-to-end acceptance suite. Prints one line per criterion and exits
// nonzero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "planegap/faces.hpp"
#include "planegap/flowcut.hpp"
#include "planegap/generators.hpp"
#include "planegap/partitions.hpp"
#include "planegap/paths.hpp"
#include "planegap/peeling.hpp"
#include "planegap/pipeline.hpp"
#include "planegap/polymatroid.hpp"
#include "planegap/stats.hpp"
#include "planegap/thin_maps.hpp"
#include "planegap/trees.hpp"

using namespace planegap;

namespace {

using Clock = std::chrono::steady_clock;
using PairList = std::vector<std::pair<VertexId, VertexId>>;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

int failures = 0;

void Report(int id, const char* name, bool pass, const std::string& metrics) {
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name, metrics.c_str());
  std::fflush(stdout);
}

std::vector<VertexId> AllVertices(int n) {
  std::vector<VertexId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Relative standard error of the pair that attains the maximum stretch.
double RelativeStderr(const StretchReport& r) {
  if (r.argmax < 0) return 0;
  const MeanSummary& s = r.pairs[r.argmax].tree_distance;
  return s.mean > 0 ? s.stderr_ / s.mean : 0;
}

void Domination() {
  const auto start = Clock::now();
  struct Instance {
    const char* name;
    PlaneGraph graph;
  };
  std::vector<Instance> instances = {{"cycle4", MakeCycle(4).graph},
                                     {"grid3", MakeGrid(3).graph},
                                     {"grid4", MakeGrid(4).graph},
                                     {"star4x3", MakeStarPaths(4, 3).graph}};
  EmbedderOptions options;
  options.certify = false;
  long draws = 0;
  long violations = 0;
  std::string gammas;
  for (const Instance& inst : instances) {
    const TerminalTreeEmbedder emb(inst.graph, options);
    gammas += Format("%s:g=%d ", inst.name, emb.gamma());
    for (long s = 0; s < 200; ++s) {
      Rng rng(11, s);
      ++draws;
      const bool ok = Dominates(emb.Sample(rng), emb.distances(), 1e-9);
      if (!ok) ++violations;
    }
  }
  const double secs = Seconds(start);
  Report(1, "domination", violations == 0 && secs < 60,
         Format("%sviolating=%ld/%ld time=%.1fs (limit 60s)", gammas.c_str(), violations, draws, secs));
}

void OneFaceGap() {
  const auto start = Clock::now();
  double lo = kInfinity;
  double hi = 0;
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(500 + i);
    RandomNetworkOptions o;
    o.terminals = 4 + i % 5;
    o.demand_pairs = 3 + i % 6;
    const FlowNetwork net = MakeRandomOsNetwork(3 + i % 2, 4, rng, o);
    const GapResult r = FlowCutGap(net, 0.02);
    lo = std::min(lo, r.gap);
    hi = std::max(hi, r.gap);
    if (r.gap < 0.98 || r.gap > 1.05 || !CheckFlow(net, r.flow, 1e-7)) ++bad;
  }
  const double secs = Seconds(start);
  Report(2, "one-face flow-cut gap", bad == 0 && secs < 120,
         Format("20 instances gap in [%.4f, %.4f] (target [0.98, 1.05]) out_of_range=%d time=%.1fs (limit 120s)",
                lo, hi, bad, secs));
}

void StretchGrowth() {
  const int sizes[] = {4, 8, 16};
  std::vector<double> dist;
  std::string text;
  for (int m : sizes) {
    const PlaneGraph g = MakeGrid(m).graph;
    const TerminalTreeEmbedder emb(g);
    const PairList pairs = PairsOf(g.terminals());
    const StretchReport r = MeasureStretch(
        [&](Rng& rng) { return emb.Sample(rng); }, emb.distances(), pairs, 200, 7);
    dist.push_back(r.dist);
    text += Format("m=%d dist=%.3f [%.3f,%.3f] ", m, r.dist, r.dist_ci.lo, r.dist_ci.hi);
  }
  const double ratio = dist.back() / dist.front();
  const bool monotone = dist[0] <= dist[1] && dist[1] <= dist[2];
  Report(3, "stretch growth", ratio <= 3.0 && monotone,
         text + Format("ratio16/4=%.3f (limit 3) nondecreasing=%d", ratio, monotone ? 1 : 0));
}

void Composition() {
  const Graph g = MakeGrid(3).graph.graph();
  const DistanceMatrix d = DistanceMatrix::AllPairs(g);
  const std::vector<VertexId> all = AllVertices(g.num_vertices());
  const PairList pairs = PairsOf(all);
  const std::vector<std::vector<VertexId>> sets = {{4}, {0, 1, 2}, {3, 4, 5}, {0, 1, 3, 4}, {1, 4, 5, 7}};
  const long samples = 1000;
  bool pass = true;
  std::string text;
  for (const auto& a : sets) {
    const PeelSampler mu(g, a);
    const PeeledMetric metric(g, a);
    const int k = static_cast<int>(a.size());
    DistanceMatrix base(g.num_vertices());
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) base.at(a[i], a[j]) = metric.core()(i, j);
    }
    const TreeSampler nu = [&metric, &a](Rng& rng) { return FrtEmbed(metric.core(), rng, a); };

    auto peel_only = [&](Rng& rng, std::span<const std::pair<VertexId, VertexId>> ps, std::vector<Length>& out) {
      Rng mu_rng = rng.Substream(0);
      const SelectorMap psi = mu.Sample(mu_rng);
      for (std::size_t i = 0; i < ps.size(); ++i) out[i] = metric.Distance(psi.image[ps[i].first], psi.image[ps[i].second]);
    };
    const ComposedSampler composed(mu, nu);
    auto both = [&](Rng& rng, std::span<const std::pair<VertexId, VertexId>> ps, std::vector<Length>& out) {
      const ComposedDraw draw = composed.Sample(rng);
      for (std::size_t i = 0; i < ps.size(); ++i) out[i] = ComposedDistance(metric, draw, ps[i].first, ps[i].second);
    };
    const StretchReport r_mu = MeasurePairStretch(peel_only, d, pairs, samples, 41);
    const StretchReport r_both = MeasurePairStretch(both, d, pairs, samples, 41);
    double nu_hat = 1.0;
    double nu_rel = 0.0;
    if (k > 1) {
      const StretchReport r_nu = MeasureStretch(nu, base, PairsOf(a), samples, 43);
      nu_hat = r_nu.dist;
      nu_rel = RelativeStderr(r_nu);
    }
    const double sigma = std::sqrt(std::pow(RelativeStderr(r_mu), 2) + std::pow(nu_rel, 2) +
                                   std::pow(RelativeStderr(r_both), 2));
    const double bound = nu_hat * r_mu.dist * (1 + 2 * sigma);
    const bool ok = r_both.dist <= bound;
    pass = pass && ok;
    text += Format("|A|=%d mu=%.3f nu=%.3f comp=%.3f<=%.3f%s ", k, r_mu.dist, nu_hat, r_both.dist, bound,
                   ok ? "" : "(!)");
  }
  Report(4, "composition", pass, text);
}

void Partitions() {
  const auto start = Clock::now();
  struct Host {
    Graph graph;
    DistanceMatrix metric;
  };
  std::vector<Host> hosts;
  for (int m : {4, 6, 8}) {
    Graph g = MakeGrid(m).graph.graph();
    DistanceMatrix d = DistanceMatrix::AllPairs(g);
    hosts.push_back({std::move(g), std::move(d)});
  }
  for (int i = 0; i < 3; ++i) {
    Rng rng(900 + i);
    RandomPlanarOptions o;
    o.min_length = 0.5;
    o.max_length = 3.0;
    o.deletion_probability = 0.1;
    Graph g = MakeRandomPlanar(5, 6, rng, o).graph.graph();
    DistanceMatrix d = DistanceMatrix::AllPairs(g);
    hosts.push_back({std::move(g), std::move(d)});
  }
  long draws = 0;
  long violations = 0;
  Rng rng(77);
  while (draws < 10000) {
    const Host& h = hosts[draws % hosts.size()];
    const PartitionScheme scheme = (draws / hosts.size()) % 2 ? PartitionScheme::kCkr : PartitionScheme::kPlanar;
    const PartitionSampler sampler(scheme, h.metric, &h.graph);
    const double delta = h.metric.MinPositive() * std::pow(2.0, rng.Uniform(0, std::log2(h.metric.Diameter() / h.metric.MinPositive()) + 1));
    const Partition p = sampler.Sample(delta, rng);
    if (MaxBlockDiameter(p, h.metric) > delta * (1 + 1e-12)) ++violations;
    ++draws;
  }

  std::string text = Format("diameter violations=%ld/%ld ", violations, draws);
  double over[2] = {0, 0};
  double half[2] = {0, 0};
  const int sizes[] = {8, 16};
  for (int i = 0; i < 2; ++i) {
    const Graph g = MakeGrid(sizes[i]).graph.graph();
    const DistanceMatrix d = DistanceMatrix::AllPairs(g);
    const PartitionSampler sampler(PartitionScheme::kPlanar, d, &g);
    const PairList pairs = AllPairs(d);
    const ScaledBetaEstimate s = EstimateBetaOverScales(sampler, pairs, 4000, 13);
    over[i] = s.beta;
    half[i] = EstimateBeta(sampler, sizes[i] / 2.0, pairs, 4000, 13).beta;
  }
  const double growth = over[1] / over[0];
  text += Format("beta m=8 %.3f m=16 %.3f growth=%.3f (limit 1.25); at delta=m/2: %.3f -> %.3f time=%.1fs",
                 over[0], over[1], growth, half[0], half[1], Seconds(start));
  Report(5, "partitions", violations == 0 && growth <= 1.25, text);
}

void Selectors() {
  struct Case {
    Graph graph;
    std::vector<VertexId> a;
  };
  std::vector<Case> cases;
  cases.push_back({MakeGrid(3).graph.graph(), {4}});
  cases.push_back({MakeGrid(3).graph.graph(), {0, 1, 2}});
  cases.push_back({MakeGrid(4).graph.graph(), GridBoundary(4, 4)});
  cases.push_back({MakeGrid(5).graph.graph(), {6, 12, 18}});
  {
    Rng rng(5);
    RandomPlanarOptions o;
    o.max_length = 4.0;
    Graph g = MakeRandomPlanar(4, 5, rng, o).graph.graph();
    cases.push_back({std::move(g), {0, 7, 13}});
  }
  long draws = 0;
  long bad = 0;
  for (const Case& c : cases) {
    for (PartitionScheme scheme : {PartitionScheme::kPlanar, PartitionScheme::kCkr}) {
      const PeelSampler sampler(c.graph, c.a, scheme);
      for (long s = 0; s < 1000; ++s) {
        Rng rng(19, s);
        if (!IsSelector(sampler.peeled(), sampler.Sample(rng))) ++bad;
        ++draws;
      }
    }
  }
  Report(6, "selector maps", bad == 0, Format("invalid=%ld/%ld", bad, draws));
}

void WeakDuality() {
  const auto start = Clock::now();
  const CapacityKind kinds[] = {CapacityKind::kConstant, CapacityKind::kTruncatedAdditive, CapacityKind::kCoverage};
  int violations = 0;
  int per_kind[3] = {0, 0, 0};
  double worst = -kInfinity;
  for (int i = 0; i < 50; ++i) {
    Rng rng(2000 + i);
    const int kind = i % 3;
    const PolymatroidNetwork net = MakeRandomPolymatroidNetwork(2, i % 2 ? 4 : 3, kinds[kind], rng);
    const PolyFlowResult flow = PolyMcf(net);
    const PolyCutResult cut = PolySparsest(net);
    ++per_kind[kind];
    worst = std::max(worst, flow.epsilon - cut.sparsity);
    if (flow.epsilon > cut.sparsity + 1e-6 || !Feasible(net, flow.edge_flow, 1e-7)) ++violations;
  }
  const double secs = Seconds(start);
  Report(7, "polymatroid weak duality", violations == 0 && secs < 300,
         Format("instances const/trunc/cover=%d/%d/%d violations=%d max(eps-phi)=%.3g time=%.1fs (limit 300s)",
                per_kind[0], per_kind[1], per_kind[2], violations, worst, secs));
}

void AdditiveCutCapacity() {
  int mismatches = 0;
  int max_size = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(3000 + i);
    PolymatroidNetwork net = MakeRandomPolymatroidNetwork(3, 4, CapacityKind::kTruncatedAdditive, rng);
    const Graph& g = net.graph();
    // w[v][local] in eighths so every sum is exact.
    std::vector<std::vector<double>> w(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      for (std::size_t j = 0; j < net.incident(v).size(); ++j) w[v].push_back(rng.UniformInt(1, 40) / 8.0);
      net.set_capacity(v, VertexCapacity::TruncatedAdditive(w[v]));
    }
    std::vector<EdgeId> edges = AllVertices(g.num_edges());
    rng.Shuffle(std::span<EdgeId>(edges));
    const int size = static_cast<int>(rng.UniformInt(1, std::min(12, g.num_edges())));
    edges.resize(size);
    std::sort(edges.begin(), edges.end());
    max_size = std::max(max_size, size);
    double expected = 0;
    for (EdgeId e : edges) {
      const Edge& ed = g.edge(e);
      expected += std::min(w[ed.u][net.LocalIndex(ed.u, e)], w[ed.v][net.LocalIndex(ed.v, e)]);
    }
    if (CutCapacity(net, edges) != expected) ++mismatches;
  }
  Report(8, "additive cut capacity", mismatches == 0,
         Format("mismatches=%d/100 max|S|=%d (exact comparison)", mismatches, max_size));
}

void LineMaps() {
  int checked_vertices = 0;
  int max_thin = 0;
  double max_grad = 0;
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(4000 + i);
    RandomPlanarOptions o;
    o.integer_lengths = true;
    o.min_length = 1;
    o.max_length = 5;
    o.deletion_probability = 0.15;
    const PlaneGraph pg = MakeRandomPlanar(3 + i % 3, 4 + i % 2, rng, o).graph;
    const FaceSet faces = TraceFaces(pg);
    const Face& face = faces.faces[rng.UniformInt(0, static_cast<int>(faces.faces.size()) - 1)];
    const LineMap line = MakeLineMap(pg.graph(), face.vertices);
    const ThinnessReport thin = Thinness(line.map, pg.graph());
    max_thin = std::max(max_thin, thin.max);
    if (thin.max > 2) ++bad;
    const std::vector<double> scales = CandidateScales(pg.graph());
    for (VertexId u = 0; u < pg.num_vertices(); ++u) {
      ++checked_vertices;
      for (double tau : scales) {
        const double grad = GradNorm(line.map, pg.graph(), u, tau);
        max_grad = std::max(max_grad, grad);
        if (grad > 1) ++bad;
      }
    }
  }
  Report(9, "line maps", bad == 0,
         Format("50 instances, %d vertices: max thinness=%d (limit 2) max grad=%.6g (limit 1) failures=%d",
                checked_vertices, max_thin, max_grad, bad));
}

void Mixture() {
  const PlaneGraph g = MakeGrid(4).graph;
  const MultiFaceMixture mixture = MultiFaceMixture::FromCover(g);
  const MixtureReport r = MeasureMixture(mixture, PairsOf(g.terminals()), 1000, 23);
  int holding = 0;
  int case_holding = 0;
  for (const MixturePair& p : r.pairs) {
    holding += p.holds;
    case_holding += p.case_holds;
  }
  Report(10, "multi-face mixture", r.all_hold,
         Format("gamma=%d K0=%.3f L0=%.3f K_hat=%.3f L_hat=%.3f thinness=%d pairs holding=%d/%zu case bounds=%d/%zu",
                r.gamma, r.k0, r.l0, r.k_hat, r.l_hat, r.max_thinness, holding, r.pairs.size(), case_holding,
                r.pairs.size()));
}

FlowNetwork RandomTreeNetwork(int n, Rng& rng) {
  Graph tree(n);
  for (VertexId v = 1; v < n; ++v) tree.AddEdge(static_cast<VertexId>(rng.UniformInt(0, v - 1)), v, 1.0);
  PlaneGraph plane(std::move(tree));
  plane.set_terminals(AllVertices(n));
  FlowNetwork net(std::move(plane));
  for (EdgeId e = 0; e < n - 1; ++e) net.set_capacity(e, static_cast<double>(rng.UniformInt(1, 4)));
  for (int k = 0; k < 5; ++k) {
    const auto s = static_cast<VertexId>(rng.UniformInt(0, n - 1));
    const auto t = static_cast<VertexId>(rng.UniformInt(0, n - 1));
    if (s != t) net.AddDemand(s, t, static_cast<double>(rng.UniformInt(1, 3)));
  }
  if (net.demands().empty()) net.AddDemand(0, n - 1, 1.0);
  return net;
}

void TreeRounding() {
  const auto start = Clock::now();
  std::string text;
  int bad = 0;
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    Rng rng(5000 + i);
    RandomNetworkOptions o;
    o.terminals = 6;
    o.demand_pairs = 5;
    const FlowNetwork net = i % 2 ? MakeRandomNetwork(3, 4, rng, o) : MakeRandomNetwork(2, 5 + i % 3, rng, o);
    const CutResult brute = SparsestCutBruteForce(net);
    const FlowResult flow = ConcurrentFlow(net, 0.05);
    PlaneGraph lengths = net.plane();
    const double lmin = *std::min_element(flow.lengths.begin(), flow.lengths.end());
    for (EdgeId e = 0; e < lengths.num_edges(); ++e) lengths.set_length(e, flow.lengths[e] / lmin);
    lengths.set_terminals(AllVertices(lengths.num_vertices()));
    const TerminalTreeEmbedder emb(lengths);
    const TreeSampler sampler = [&emb](Rng& r) { return emb.Sample(r); };
    const CutResult rounded = TreeRound(net, sampler, 200, 31);
    const StretchReport stretch =
        MeasureStretch(sampler, emb.distances(), PairsOf(lengths.terminals()), 200, 31);
    const double ratio = rounded.sparsity / brute.sparsity;
    worst = std::max(worst, ratio / stretch.dist);
    if (rounded.sparsity > brute.sparsity * stretch.dist * (1 + 1e-12)) ++bad;
    if (i < 3) text += Format("[n=%d ratio=%.3f D=%.3f] ", net.num_vertices(), ratio, stretch.dist);
  }
  int tree_bad = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(6000 + i);
    const FlowNetwork net = RandomTreeNetwork(static_cast<int>(rng.UniformInt(4, 14)), rng);
    TreeSample self;
    self.Map(0, 0);
    for (VertexId v = 1; v < net.num_vertices(); ++v) {
      // Parents precede children, so node ids follow vertex ids.
      const Edge& e = net.graph().edge(v - 1);
      self.Map(v, self.tree.AddNode(e.u, e.length));
    }
    const double swept = BestTreeCut(net, self).sparsity;
    const double exact = SparsestCutBruteForce(net).sparsity;
    if (std::abs(swept - exact) > 1e-12 * exact) ++tree_bad;
  }
  Report(11, "tree rounding", bad == 0 && tree_bad == 0,
         text + Format("worst (ratio/D)=%.3f violations=%d/10; tree self-embedding mismatches=%d/20 time=%.1fs", worst,
                       bad, tree_bad, Seconds(start)));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  Domination();
  OneFaceGap();
  StretchGrowth();
  Composition();
  Partitions();
  Selectors();
  WeakDuality();
  AdditiveCutCapacity();
  LineMaps();
  Mixture();
  TreeRounding();
  std::printf("%d of 11 criteria failed, total %.1fs\n", failures, Seconds(start));
  return failures == 0 ? 0 : 1;
}
