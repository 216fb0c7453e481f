#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "planegap/faces.hpp"
#include "planegap/generators.hpp"
#include "planegap/partitions.hpp"
#include "planegap/thin_maps.hpp"
#include "planegap/trees.hpp"

namespace planegap {
namespace {

// Thinness by explicit BFS paths in the host tree.
int BruteThinness(const ThinMap& f, const Graph& g, VertexId u) {
  const MetricTree& t = f.tree;
  const int n = t.num_nodes();
  std::vector<std::vector<int>> adj(n);
  for (int x = 1; x < n; ++x) {
    adj[x].push_back(t.parent(x));
    adj[t.parent(x)].push_back(x);
  }
  const int root = f.Node(u);
  std::vector<int> prev(n, -2);
  std::queue<int> q;
  q.push(root);
  prev[root] = -1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : adj[x]) {
      if (prev[y] == -2) {
        prev[y] = x;
        q.push(y);
      }
    }
  }
  std::set<std::pair<int, int>> edges;
  for (DartId d : g.out_darts(u)) {
    for (int x = f.Node(g.head(d)); x != root; x = prev[x]) edges.insert({std::min(x, prev[x]), std::max(x, prev[x])});
  }
  std::vector<int> deg(n, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  int leaves = 0;
  for (int x = 0; x < n; ++x) {
    if (x != root && deg[x] == 1) ++leaves;
  }
  return leaves;
}

TEST(Thinness, StarOnThreeBranches) {
  Graph star(4);
  for (int i = 1; i <= 3; ++i) star.AddEdge(0, i, 1.0);
  ThinMap f;
  f.Map(0, 0);
  for (int i = 1; i <= 3; ++i) f.Map(i, f.tree.AddNode(0, 1.0));
  EXPECT_EQ(Thinness(f, star).per_vertex[0], 3);
  EXPECT_EQ(Thinness(f, star).per_vertex[1], 1);

  ThinMap collapsed;
  for (int i = 0; i < 4; ++i) collapsed.Map(i, 0);
  EXPECT_EQ(Thinness(collapsed, star).max, 0);
}

TEST(Thinness, MatchesBruteForceOnFrt) {
  const PlaneGraph g = MakeGrid(4).graph;
  const DistanceMatrix d = DistanceMatrix::AllPairs(g.graph());
  for (int s = 0; s < 20; ++s) {
    Rng rng(8, s);
    const ThinMap f = FrtEmbed(d, rng);
    const ThinnessReport r = Thinness(f, g.graph());
    for (VertexId u = 0; u < g.num_vertices(); ++u) EXPECT_EQ(r.per_vertex[u], BruteThinness(f, g.graph(), u));
  }
}

TEST(GradNorm, Examples) {
  Graph g(2);
  g.AddEdge(0, 1, 1.0);
  ThinMap f;
  f.Map(0, 0);
  f.Map(1, f.tree.AddNode(0, 2.0));
  EXPECT_DOUBLE_EQ(GradNorm(f, g, 0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(GradNorm(f, g, 0, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(GradNorm(f, g, 0, 4.0), 0.0);
  EXPECT_DOUBLE_EQ(GradNorm(f, g, 0, 0.2), 0.0);
}

TEST(LineMap, GridOuterFace) {
  const PlaneGraph g = MakeGrid(3).graph;
  const LineMap line = MakeLineMap(g.graph(), GridBoundary(3, 3));
  for (VertexId v = 0; v < 9; ++v) EXPECT_DOUBLE_EQ(line.value[v], v == 4 ? 1.0 : 0.0);
  EXPECT_DOUBLE_EQ(line.map.Distance(4, 0), 1.0);
}

TEST(LineMap, DisconnectedVertexRejected) {
  Graph g(3);
  g.AddEdge(0, 1, 1.0);
  try {
    MakeLineMap(g, std::vector<VertexId>{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
  }
}

TEST(LineMap, TwoThinAndLipschitzOnRandomPlanar) {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    RandomPlanarOptions opt;
    opt.min_length = 0.5;
    opt.max_length = 3.0;
    const Drawing dr = MakeRandomPlanar(3 + seed % 3, 4, rng, opt);
    const Graph& g = dr.graph.graph();
    const FaceSet faces = TraceFaces(dr.graph);
    const auto& face = faces.faces[rng.UniformInt(0, static_cast<int>(faces.faces.size()) - 1)].vertices;
    const LineMap line = MakeLineMap(g, face);
    EXPECT_LE(Thinness(line.map, g).max, 2);
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      for (double tau : CandidateScales(g)) EXPECT_LE(GradNorm(line.map, g, u, tau), 1.0 + 1e-12);
    }
    const auto d = testing::FloydWarshall(g);
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        EXPECT_LE(std::abs(line.value[u] - line.value[v]), d[u][v] + 1e-12);
      }
    }
  }
}

TEST(FaceTreeMap, DominatesAndIsTotal) {
  const PlaneGraph g = MakeGrid(4).graph;
  const DistanceMatrix d = DistanceMatrix::AllPairs(g.graph());
  for (int s = 0; s < 10; ++s) {
    Rng rng(3, s);
    const ThinMap f = MakeFaceTreeMap(g, GridBoundary(4, 4), rng, d);
    for (VertexId u = 0; u < 16; ++u) {
      ASSERT_TRUE(f.Has(u));
      for (VertexId v = 0; v < 16; ++v) EXPECT_GE(f.Distance(u, v), d(u, v) - 1e-9);
    }
  }
}

TEST(Mixture, SingleFaceIsACoinFlip) {
  const PlaneGraph g = MakeCycle(5).graph;
  const MultiFaceMixture mix = MultiFaceMixture::FromCover(g);
  EXPECT_EQ(mix.gamma(), 1);
  int counts[2] = {0, 0};
  for (int s = 0; s < 400; ++s) {
    Rng rng(1, s);
    int option = -1;
    mix.Sample(rng, &option);
    ASSERT_TRUE(option == 0 || option == 1);
    ++counts[option];
  }
  EXPECT_GT(counts[0], 140);
  EXPECT_GT(counts[1], 140);
}

TEST(Mixture, LowerBoundOnGrid) {
  const PlaneGraph g = MakeGrid(4).graph;
  const MultiFaceMixture mix = MultiFaceMixture::FromCover(g);
  ASSERT_EQ(mix.gamma(), 2);
  const auto pairs = PairsOf(g.terminals());
  const MixtureReport r = MeasureMixture(mix, pairs, 300, 17);
  EXPECT_TRUE(r.all_hold);
  EXPECT_LE(r.line_thinness, 2);
  EXPECT_GE(r.k0, 1.0);
  EXPECT_GE(r.l0, 1.0);
  EXPECT_EQ(r.pairs.size(), pairs.size());
  for (const MixturePair& p : r.pairs) EXPECT_GE(p.face, 0);
}

}  // namespace
}  // namespace planegap
