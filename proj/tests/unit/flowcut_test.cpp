#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "planegap/flowcut.hpp"
#include "planegap/generators.hpp"
#include "planegap/trees.hpp"

namespace planegap {
namespace {

FlowNetwork SingleEdge(double demand) {
  Graph g(2);
  g.AddEdge(0, 1, 1.0);
  FlowNetwork net{PlaneGraph(std::move(g))};
  net.AddDemand(0, 1, demand);
  return net;
}

FlowNetwork FourCycle() {
  FlowNetwork net(MakeCycle(4).graph);
  net.AddDemand(0, 2, 1.0);
  return net;
}

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvariantViolation;
}

// Independent sparsest cut: every subset, no symmetry trick.
double NaiveSparsest(const FlowNetwork& net) {
  const int n = net.num_vertices();
  double best = kInfinity;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    double cap = 0, dem = 0;
    for (EdgeId e = 0; e < net.graph().num_edges(); ++e) {
      const Edge& edge = net.graph().edge(e);
      if (((mask >> edge.u) & 1) != ((mask >> edge.v) & 1)) cap += net.capacity(e);
    }
    for (const Demand& d : net.demands()) {
      if (((mask >> d.s) & 1) != ((mask >> d.t) & 1)) dem += d.amount;
    }
    if (dem > 0) best = std::min(best, cap / dem);
  }
  return best;
}

TEST(ConcurrentFlow, SingleEdge) {
  const FlowResult f = ConcurrentFlow(SingleEdge(1.0), 0.02);
  EXPECT_NEAR(f.lambda, 1.0, 0.02);
  EXPECT_LE(f.lambda, 1.0 + 1e-9);
  EXPECT_TRUE(CheckFlow(SingleEdge(1.0), f));
}

TEST(ConcurrentFlow, OverloadedEdgeScales) {
  const FlowResult f = ConcurrentFlow(SingleEdge(4.0), 0.02);
  EXPECT_NEAR(f.lambda, 0.25, 0.25 * 0.02);
}

TEST(ConcurrentFlow, FourCycleUsesBothSides) {
  const FlowNetwork net = FourCycle();
  const FlowResult f = ConcurrentFlow(net, 0.02);
  EXPECT_NEAR(f.lambda, 2.0, 2.0 * 0.02);
  EXPECT_LE(f.lambda, 2.0 + 1e-9);
  EXPECT_TRUE(CheckFlow(net, f));
  EXPECT_GE(f.upper_bound, 2.0 - 1e-9);
  EXPECT_GE(f.lambda, (1 - 0.02) * f.upper_bound);
}

TEST(ConcurrentFlow, Errors) {
  Graph g(3);
  g.AddEdge(0, 1, 1.0);
  FlowNetwork split{PlaneGraph(std::move(g))};
  split.AddDemand(0, 2, 1.0);
  EXPECT_EQ(CodeOf([&] { ConcurrentFlow(split, 0.1); }), ErrorCode::kDisconnectedDemand);
  EXPECT_EQ(CodeOf([&] { ConcurrentFlow(SingleEdge(0.0), 0.1); }), ErrorCode::kZeroDemand);
  EXPECT_EQ(CodeOf([&] { ConcurrentFlow(SingleEdge(1.0), 0.5); }), ErrorCode::kBadParams);
  EXPECT_EQ(CodeOf([&] { ConcurrentFlow(SingleEdge(1.0), 0.0); }), ErrorCode::kBadParams);
}

TEST(ConcurrentFlow, ZeroCapacityEdgeDisconnects) {
  FlowNetwork net = SingleEdge(1.0);
  net.set_capacity(0, 0.0);
  EXPECT_EQ(CodeOf([&] { ConcurrentFlow(net, 0.1); }), ErrorCode::kDisconnectedDemand);
}

TEST(ConcurrentFlow, CheckFlowRejectsOverload) {
  const FlowNetwork net = FourCycle();
  FlowResult f = ConcurrentFlow(net, 0.1);
  f.commodity_flow[0][0] *= 1.5;
  EXPECT_FALSE(CheckFlow(net, f));
}

TEST(CutSparsity, Examples) {
  const CutResult c = CutSparsity(FourCycle(), std::vector<VertexId>{0});
  EXPECT_DOUBLE_EQ(c.capacity, 2.0);
  EXPECT_DOUBLE_EQ(c.demand, 1.0);
  EXPECT_DOUBLE_EQ(c.sparsity, 2.0);
  EXPECT_EQ(CodeOf([] { CutSparsity(FourCycle(), std::vector<VertexId>{0, 1, 2, 3}); }),
            ErrorCode::kNoSeparatedDemand);
  EXPECT_EQ(CodeOf([] { CutSparsity(FourCycle(), std::vector<VertexId>{1}); }), ErrorCode::kNoSeparatedDemand);
  const CutResult e = CutSparsity(SingleEdge(1.0), std::vector<VertexId>{0});
  EXPECT_DOUBLE_EQ(e.sparsity, 1.0);
}

TEST(SparsestCut, Examples) {
  EXPECT_DOUBLE_EQ(SparsestCutBruteForce(SingleEdge(1.0)).sparsity, 1.0);
  const CutResult c = SparsestCutBruteForce(FourCycle());
  EXPECT_DOUBLE_EQ(c.sparsity, 2.0);
  EXPECT_DOUBLE_EQ(c.sparsity, CutSparsity(FourCycle(), c.side).sparsity);
}

TEST(SparsestCut, TooLarge) {
  FlowNetwork net(MakePath(21).graph);
  net.AddDemand(0, 20, 1.0);
  EXPECT_EQ(CodeOf([&] { SparsestCutBruteForce(net); }), ErrorCode::kTooLarge);
}

TEST(SparsestCut, MatchesNaiveEnumeration) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    RandomNetworkOptions opt;
    opt.terminals = 5;
    const FlowNetwork net = MakeRandomNetwork(3, 3, rng, opt);
    EXPECT_NEAR(SparsestCutBruteForce(net).sparsity, NaiveSparsest(net), 1e-12) << seed;
  }
}

TEST(FlowCut, WeakDualityAndGapOnRandomNetworks) {
  const double eps = 0.05;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(1000 + seed);
    RandomNetworkOptions opt;
    opt.terminals = 3 + seed % 4;
    const int rows = 2 + seed % 2;
    const FlowNetwork net = MakeRandomNetwork(rows, 3, rng, opt);
    const GapResult r = FlowCutGap(net, eps);
    EXPECT_TRUE(CheckFlow(net, r.flow)) << seed;
    EXPECT_LE(r.flow.lambda, r.cut.sparsity * (1 + 1e-9)) << seed;
    EXPECT_LE(r.flow.lambda, r.flow.upper_bound * (1 + 1e-9)) << seed;
    EXPECT_GE(r.gap, 1 - eps) << seed;
  }
}

TEST(FlowCut, SingleEdgeGapIsOne) {
  EXPECT_NEAR(FlowCutGap(SingleEdge(1.0), 0.02).gap, 1.0, 0.03);
}

TEST(FlowCut, OutsideFaceInstancesHaveUnitGap) {
  for (int seed = 0; seed < 5; ++seed) {
    Rng rng(77 + seed);
    const FlowNetwork net = MakeRandomOsNetwork(3, 4, rng);
    const GapResult r = FlowCutGap(net, 0.02);
    EXPECT_GE(r.gap, 0.98) << seed;
    EXPECT_LE(r.gap, 1.05) << seed;
  }
}

// Star tree network with an exact tree embedding.
TEST(TreeRound, TreeNetworkSweepIsOptimal) {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Drawing d = MakeStarPaths(3, 2);
    FlowNetwork net(d.graph);
    for (EdgeId e = 0; e < net.graph().num_edges(); ++e) net.set_capacity(e, static_cast<double>(rng.UniformInt(1, 4)));
    for (int i = 0; i < 4; ++i) {
      const VertexId s = static_cast<VertexId>(rng.UniformInt(0, 6));
      const VertexId t = static_cast<VertexId>(rng.UniformInt(0, 6));
      net.AddDemand(s, t, rng.Uniform(0.5, 2.0));
    }
    net.AddDemand(1, 6, 1.0);
    TreeSample tree;
    // The star-paths graph is itself a tree rooted at 0 with parents of
    // smaller id, so it maps onto itself.
    std::vector<int> node(7, -1);
    node[0] = 0;
    tree.Map(0, 0);
    for (VertexId v = 1; v < 7; ++v) {
      for (DartId e : net.graph().out_darts(v)) {
        const VertexId u = net.graph().head(e);
        if (u < v) {
          node[v] = tree.tree.AddNode(node[u], 1.0);
          tree.Map(v, node[v]);
        }
      }
    }
    const CutResult swept = BestTreeCut(net, tree);
    EXPECT_DOUBLE_EQ(swept.sparsity, SparsestCutBruteForce(net).sparsity) << seed;
    const CutResult rounded = TreeRound(net, [&](Rng&) { return tree; }, 3, 5);
    EXPECT_DOUBLE_EQ(rounded.sparsity, swept.sparsity);
  }
}

TEST(TreeRound, SinglePairIsSeparated) {
  const Drawing d = MakeGrid(3);
  FlowNetwork net(d.graph);
  net.AddDemand(0, 8, 1.0);
  const DistanceMatrix metric = DistanceMatrix::AllPairs(net.graph());
  const CutResult c = TreeRound(net, [&](Rng& rng) { return FrtEmbed(metric, rng); }, 20, 3);
  const bool has0 = std::binary_search(c.side.begin(), c.side.end(), 0);
  const bool has8 = std::binary_search(c.side.begin(), c.side.end(), 8);
  EXPECT_NE(has0, has8);
  EXPECT_GE(c.sparsity, SparsestCutBruteForce(net).sparsity);
}

TEST(FlowNetworkJson, RoundTrip) {
  Rng rng(4);
  const FlowNetwork net = MakeRandomNetwork(2, 3, rng);
  const FlowNetwork back = FlowNetworkFromJson(ToJson(net));
  EXPECT_EQ(ToJson(back), ToJson(net));
  ASSERT_EQ(back.demands().size(), net.demands().size());
  EXPECT_DOUBLE_EQ(back.TotalDemand(), net.TotalDemand());
}

TEST(FlowNetwork, DemandsAreUnorderedAndSummed) {
  FlowNetwork net(MakeCycle(4).graph);
  net.AddDemand(2, 0, 1.0);
  net.AddDemand(0, 2, 0.5);
  ASSERT_EQ(net.demands().size(), 1u);
  EXPECT_EQ(net.demands()[0].s, 0);
  EXPECT_DOUBLE_EQ(net.demands()[0].amount, 1.5);
}

}  // namespace
}  // namespace planegap
