#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "planegap/flowcut.hpp"
#include "planegap/generators.hpp"
#include "planegap/polymatroid.hpp"
#include "planegap/simplex.hpp"

namespace planegap {
namespace {

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvariantViolation;
}

PolymatroidNetwork SingleEdge(double cu, double cv, double demand) {
  Graph g(2);
  g.AddEdge(0, 1, 1.0);
  PolymatroidNetwork net{PlaneGraph(std::move(g))};
  net.set_capacity(0, VertexCapacity::Constant(cu));
  net.set_capacity(1, VertexCapacity::Constant(cv));
  net.AddDemand(0, 1, demand);
  return net;
}

TEST(Simplex, SmallLp) {
  const LpResult r = MaximizeLp({{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {3, 2});
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 11.0, 1e-12);
  EXPECT_NEAR(r.x[0], 3.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
  double dual_objective = 4 * r.dual[0] + 6 * r.dual[1] + 3 * r.dual[2];
  EXPECT_NEAR(dual_objective, r.objective, 1e-12);
  for (double y : r.dual) EXPECT_GE(y, -1e-12);
}

TEST(Simplex, DetectsUnbounded) {
  EXPECT_EQ(MaximizeLp({{1, -1}}, {1}, {1, 0}).status, LpStatus::kUnbounded);
  EXPECT_EQ(CodeOf([] { MaximizeLp({{1}}, {-1}, {1}); }), ErrorCode::kBadParams);
}

TEST(Submodular, Families) {
  EXPECT_TRUE(CheckSubmodular(VertexCapacity::Constant(2.0), 5));
  Rng rng(3);
  for (int deg = 1; deg <= 6; ++deg) {
    std::vector<double> w(deg);
    for (double& x : w) x = rng.Uniform(0.1, 2.0);
    EXPECT_TRUE(CheckSubmodular(VertexCapacity::TruncatedAdditive(w, 1.5), deg));
    std::vector<std::uint64_t> covers(deg);
    for (auto& c : covers) c = rng.NextU64() & 0xF;
    EXPECT_TRUE(CheckSubmodular(VertexCapacity::Coverage({1, 2, 0.5, 1}, covers), deg));
  }
  // f({1,2}) > f({1}) + f({2}).
  EXPECT_FALSE(CheckSubmodular(VertexCapacity::Table({0, 1, 1, 3}), 2));
  // Not monotone.
  EXPECT_FALSE(CheckSubmodular(VertexCapacity::Table({0, 2, 2, 1}), 2));
  EXPECT_EQ(CodeOf([] { CheckSubmodular(VertexCapacity::Constant(1), 13); }), ErrorCode::kDegreeTooLarge);
}

TEST(Feasible, Examples) {
  const PolymatroidNetwork net = SingleEdge(1, 1, 1);
  EXPECT_TRUE(Feasible(net, std::vector<double>{0.0}));
  EXPECT_TRUE(Feasible(net, std::vector<double>{1.0}));
  EXPECT_FALSE(Feasible(net, std::vector<double>{1.5}));

  Graph g(3);
  g.AddEdge(0, 1, 1.0);
  g.AddEdge(0, 2, 1.0);
  PolymatroidNetwork two{PlaneGraph(std::move(g))};
  two.set_capacity(0, VertexCapacity::TruncatedAdditive({2, 2}, 2.0));
  two.set_capacity(1, VertexCapacity::Constant(5));
  two.set_capacity(2, VertexCapacity::Constant(5));
  EXPECT_FALSE(Feasible(two, std::vector<double>{1.5, 1.5}));
  EXPECT_TRUE(Feasible(two, std::vector<double>{1.0, 1.0}));
}

TEST(Feasible, ConstantMatchesVertexLoad) {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const PolymatroidNetwork net = MakeRandomPolymatroidNetwork(2, 4, CapacityKind::kConstant, rng);
    std::vector<double> phi(net.num_edges());
    for (double& x : phi) x = rng.Uniform(0.0, 1.0);
    bool expected = true;
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      double load = 0;
      for (EdgeId e : net.incident(v)) load += phi[e];
      expected = expected && load <= net.capacity(v).constant + 1e-9;
    }
    EXPECT_EQ(Feasible(net, phi), expected) << seed;
  }
}

TEST(CutCapacity, Examples) {
  const PolymatroidNetwork net = SingleEdge(2, 3, 1);
  EXPECT_DOUBLE_EQ(CutCapacity(net, std::vector<EdgeId>{0}), 2.0);
  EXPECT_DOUBLE_EQ(CutCapacity(net, std::vector<EdgeId>{}), 0.0);
}

TEST(CutCapacity, AdditiveClosedForm) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(100 + seed);
    PolymatroidNetwork net = MakeRandomPolymatroidNetwork(3, 4, CapacityKind::kTruncatedAdditive, rng);
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      std::vector<double> w(net.incident(v).size());
      for (double& x : w) x = rng.Uniform(0.1, 3.0);
      net.set_capacity(v, VertexCapacity::TruncatedAdditive(std::move(w)));
    }
    std::vector<EdgeId> s;
    for (EdgeId e = 0; e < net.num_edges() && s.size() < 12; ++e) {
      if (rng.Coin()) s.push_back(e);
    }
    double expected = 0;
    for (EdgeId e : s) {
      const Edge& edge = net.graph().edge(e);
      expected += std::min(net.capacity(edge.u).weights[net.LocalIndex(edge.u, e)],
                           net.capacity(edge.v).weights[net.LocalIndex(edge.v, e)]);
    }
    EXPECT_NEAR(CutCapacity(net, s), expected, 1e-12) << seed;
  }
}

TEST(CutCapacity, TooLarge) {
  PolymatroidNetwork net(MakePath(22).graph);
  std::vector<EdgeId> all(21);
  for (int i = 0; i < 21; ++i) all[i] = i;
  EXPECT_EQ(CodeOf([&] { CutCapacity(net, all); }), ErrorCode::kTooLarge);
}

TEST(PolySparsity, Examples) {
  const PolymatroidNetwork net = SingleEdge(2, 3, 1);
  EXPECT_DOUBLE_EQ(PolySparsity(net, std::vector<EdgeId>{0}).sparsity, 2.0);
  PolymatroidNetwork cycle(MakeCycle(4).graph);
  cycle.AddDemand(0, 2, 1.0);
  EXPECT_EQ(CodeOf([&] { PolySparsity(cycle, std::vector<EdgeId>{0}); }), ErrorCode::kNoSeparatedDemand);
  PolymatroidNetwork path(MakePath(4).graph);
  path.AddDemand(0, 3, 2.0);
  EXPECT_DOUBLE_EQ(PolySparsity(path, std::vector<EdgeId>{0, 1, 2}).demand, 2.0);
}

TEST(PolySparsest, TriangleByHand) {
  Graph g(3);
  g.AddEdge(0, 1, 1.0);
  g.AddEdge(1, 2, 1.0);
  g.AddEdge(0, 2, 1.0);
  PolymatroidNetwork net{PlaneGraph(std::move(g))};
  net.set_capacity(0, VertexCapacity::Constant(1));
  net.set_capacity(1, VertexCapacity::Constant(2));
  net.set_capacity(2, VertexCapacity::Constant(3));
  net.AddDemand(0, 1, 1.0);
  // Separating sets: {e0,e1} -> 2, {e0,e2} -> 1, all three -> 3.
  const PolyCutResult r = PolySparsest(net);
  EXPECT_DOUBLE_EQ(r.sparsity, 1.0);
  EXPECT_EQ(r.edges, (std::vector<EdgeId>{0, 2}));
  EXPECT_DOUBLE_EQ(PolySparsest(SingleEdge(2, 3, 1)).sparsity, 2.0);
}

TEST(PolyMcf, Examples) {
  EXPECT_NEAR(PolyMcf(SingleEdge(1, 1, 1)).epsilon, 1.0, 1e-9);
  EXPECT_NEAR(PolyMcf(SingleEdge(1, 1, 2)).epsilon, 0.5, 1e-9);
  // The corner terminals carry the whole flow through both incident edges,
  // so their unit capacity binds.
  PolymatroidNetwork cycle(MakeCycle(4).graph);
  for (VertexId v = 0; v < 4; ++v) cycle.set_capacity(v, VertexCapacity::Constant(1));
  cycle.AddDemand(0, 2, 1.0);
  const PolyFlowResult r = PolyMcf(cycle);
  EXPECT_NEAR(r.epsilon, 1.0, 1e-9);
  EXPECT_TRUE(Feasible(cycle, r.edge_flow));
  EXPECT_NEAR(PolySparsest(cycle).sparsity, 1.0, 1e-12);
}

TEST(PolyMcf, Errors) {
  PolymatroidNetwork big(MakePath(11).graph);
  big.AddDemand(0, 10, 1.0);
  EXPECT_EQ(CodeOf([&] { PolyMcf(big); }), ErrorCode::kTooLarge);
  EXPECT_EQ(CodeOf([] { PolyMcf(SingleEdge(1, 1, 0)); }), ErrorCode::kZeroDemand);
}

// Additive caps equal to an edge capacity at both ends reduce to the
// edge-capacitated concurrent flow.
TEST(PolyMcf, MatchesEdgeCapacitatedFlow) {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(40 + seed);
    RandomNetworkOptions opt;
    opt.terminals = 4;
    opt.demand_pairs = 3;
    const FlowNetwork flow_net = MakeRandomNetwork(2, 4, rng, opt);
    PolymatroidNetwork net(flow_net.plane());
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      std::vector<double> w;
      for (EdgeId e : net.incident(v)) w.push_back(flow_net.capacity(e));
      net.set_capacity(v, VertexCapacity::TruncatedAdditive(std::move(w)));
    }
    for (const Demand& d : flow_net.demands()) net.AddDemand(d.s, d.t, d.amount);
    const double eps = 0.01;
    const FlowResult mwu = ConcurrentFlow(flow_net, eps);
    const PolyFlowResult lp = PolyMcf(net);
    EXPECT_LE(mwu.lambda, lp.epsilon * (1 + 1e-9)) << seed;
    EXPECT_GE(mwu.lambda, (1 - eps) * lp.epsilon * (1 - 1e-9)) << seed;
    EXPECT_TRUE(Feasible(net, lp.edge_flow)) << seed;
  }
}

TEST(PolyMcf, WeakDualityOnRandomInstances) {
  const CapacityKind kinds[] = {CapacityKind::kConstant, CapacityKind::kTruncatedAdditive, CapacityKind::kCoverage};
  for (int seed = 0; seed < 15; ++seed) {
    Rng rng(900 + seed);
    const PolymatroidNetwork net = MakeRandomPolymatroidNetwork(2, 3 + seed % 2, kinds[seed % 3], rng);
    const PolyFlowResult flow = PolyMcf(net);
    const PolyCutResult cut = PolySparsest(net);
    EXPECT_LE(flow.epsilon, cut.sparsity + 1e-6) << seed;
    EXPECT_TRUE(Feasible(net, flow.edge_flow, 1e-7)) << seed;
  }
}

TEST(PolymatroidJson, RoundTripAllFamilies) {
  const CapacityKind kinds[] = {CapacityKind::kConstant, CapacityKind::kTruncatedAdditive, CapacityKind::kCoverage};
  for (CapacityKind kind : kinds) {
    Rng rng(5);
    const PolymatroidNetwork net = MakeRandomPolymatroidNetwork(2, 3, kind, rng);
    const PolymatroidNetwork back = PolymatroidNetworkFromJson(ToJson(net));
    EXPECT_EQ(ToJson(back), ToJson(net)) << ToString(kind);
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      const auto full = (1u << net.incident(v).size()) - 1;
      EXPECT_DOUBLE_EQ(back.Rho(v, full), net.Rho(v, full));
    }
  }
  EXPECT_EQ(ParseCapacityKind("COVERAGE"), CapacityKind::kCoverage);
  EXPECT_EQ(CodeOf([] { ParseCapacityKind("LINEAR"); }), ErrorCode::kParseError);
}

}  // namespace
}  // namespace planegap
