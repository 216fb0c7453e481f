#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "planegap/faces.hpp"
#include "planegap/generators.hpp"
#include "planegap/graph_io.hpp"
#include "planegap/paths.hpp"
#include "planegap/plane_graph.hpp"

namespace planegap {
namespace {

TEST(Validate, UnitFourCycleIsValidWithTwoFaces) {
  const PlaneGraph g = MakeCycle(4).graph;
  const ValidationReport r = Validate(g);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.num_faces, 2);
  EXPECT_EQ(r.num_components, 1);
}

TEST(Validate, SingleVertexHasOneFace) {
  const PlaneGraph g{Graph(1)};
  const ValidationReport r = Validate(g);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.num_faces, 1);
}

TEST(Validate, RotationListingNonNeighborIsRejected) {
  PlaneGraph g = MakeCycle(4).graph;
  // Vertex 0 is adjacent to 1 and 3; 2 is not a neighbor.
  const VertexId bogus[] = {1, 2};
  EXPECT_FALSE(g.SetRotationFromNeighbors(0, bogus));
  const ValidationReport r = Validate(g);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.Has(ErrorCode::kRotationMismatch));
}

TEST(Validate, NegativeLengthIsRejected) {
  PlaneGraph g = MakeCycle(4).graph;
  g.set_length(0, -1.0);
  EXPECT_TRUE(Validate(g).Has(ErrorCode::kNegativeLength));
}

TEST(Validate, NonPlanarRotationBreaksEuler) {
  PlaneGraph g = MakeGrid(3).graph;
  auto rot = g.rotation(4);
  std::vector<DartId> order(rot.begin(), rot.end());
  std::swap(order[0], order[1]);
  g.set_rotation(4, order);
  // The rotation is still a permutation, but the surface is no longer a sphere.
  const ValidationReport r = Validate(g);
  EXPECT_FALSE(r.Has(ErrorCode::kRotationMismatch));
  EXPECT_TRUE(r.Has(ErrorCode::kEulerViolation));
}

TEST(TraceFaces, FourCycleHasTwoWalksOfLengthFour) {
  const FaceSet faces = TraceFaces(MakeCycle(4).graph);
  ASSERT_EQ(faces.faces.size(), 2u);
  for (const Face& f : faces.faces) EXPECT_EQ(f.darts.size(), 4u);
}

TEST(TraceFaces, GridThreeHasFiveFaces) {
  const FaceSet faces = TraceFaces(MakeGrid(3).graph);
  ASSERT_EQ(faces.faces.size(), 5u);
  int squares = 0;
  for (const Face& f : faces.faces) squares += f.darts.size() == 4 ? 1 : 0;
  EXPECT_EQ(squares, 4);
}

TEST(TraceFaces, PathOfTwoEdgesHasOneFaceOfLengthFour) {
  const FaceSet faces = TraceFaces(MakePath(3).graph);
  ASSERT_EQ(faces.faces.size(), 1u);
  EXPECT_EQ(faces.faces[0].darts.size(), 4u);
}

TEST(TraceFaces, EveryDartUsedOnceAndEulerHoldsOnRandomInstances) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Drawing d;
    switch (trial % 4) {
      case 0: d = MakeGrid(1 + static_cast<int>(rng.UniformInt(0, 5)),
                           1 + static_cast<int>(rng.UniformInt(0, 5))); break;
      case 1: d = MakeCycle(3 + static_cast<int>(rng.UniformInt(0, 10))); break;
      case 2: d = MakeStarPaths(1 + static_cast<int>(rng.UniformInt(0, 5)),
                                1 + static_cast<int>(rng.UniformInt(0, 3))); break;
      default: {
        RandomPlanarOptions opt;
        opt.deletion_probability = 0.3;
        d = MakeRandomPlanar(2 + static_cast<int>(rng.UniformInt(0, 4)),
                             2 + static_cast<int>(rng.UniformInt(0, 4)), rng, opt);
      }
    }
    const FaceSet faces = TraceFaces(d.graph);
    std::vector<int> uses(d.graph.graph().num_darts(), 0);
    for (const Face& f : faces.faces) {
      for (DartId x : f.darts) ++uses[x];
    }
    for (int u : uses) ASSERT_EQ(u, 1);
    std::vector<int> comp;
    const int c = d.graph.graph().Components(comp);
    const int v = d.graph.num_vertices();
    const int e = d.graph.num_edges();
    const int f = static_cast<int>(faces.faces.size()) - (c - 1);
    EXPECT_EQ(v - e + f, 1 + c) << "trial " << trial;
    EXPECT_TRUE(Validate(d.graph).ok);
  }
}

TEST(ShortestPath, OppositeCornersOfFourCycle) {
  const PathResult p = ShortestPath(MakeCycle(4).graph.graph(), 0, 2);
  EXPECT_EQ(p.length, 2.0);
  ASSERT_EQ(p.vertices.size(), 3u);
  // Both routes have length 2; the smaller intermediate vertex wins.
  EXPECT_EQ(p.vertices[1], 1);
}

TEST(ShortestPath, SameVertexIsEmpty) {
  const PathResult p = ShortestPath(MakeCycle(4).graph.graph(), 3, 3);
  EXPECT_EQ(p.length, 0.0);
  EXPECT_TRUE(p.edges.empty());
}

TEST(ShortestPath, ZeroLengthEdge) {
  Graph g(2);
  g.AddEdge(0, 1, 0.0);
  const PathResult p = ShortestPath(g, 0, 1);
  EXPECT_EQ(p.length, 0.0);
  EXPECT_EQ(p.edges.size(), 1u);
}

TEST(ShortestPath, DisconnectedThrows) {
  Graph g(2);
  try {
    ShortestPath(g, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
  }
}

TEST(ShortestPath, MatchesFloydWarshallOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    RandomPlanarOptions opt;
    opt.min_length = 0;
    opt.max_length = 5;
    opt.integer_lengths = trial % 2 == 0;  // integer lengths exercise ties
    opt.deletion_probability = 0.2;
    const Drawing d = MakeRandomPlanar(1 + static_cast<int>(rng.UniformInt(1, 4)),
                                       1 + static_cast<int>(rng.UniformInt(1, 5)), rng, opt);
    const Graph& g = d.graph.graph();
    ASSERT_LE(g.num_vertices(), 30);
    const auto oracle = testing::FloydWarshall(g);
    const DistOracle dm = DistOracle::AllPairs(g);
    for (int u = 0; u < g.num_vertices(); ++u) {
      for (int v = 0; v < g.num_vertices(); ++v) {
        EXPECT_DOUBLE_EQ(dm(u, v), oracle[u][v]);
        const PathResult p = ShortestPath(g, u, v);
        EXPECT_DOUBLE_EQ(p.length, oracle[u][v]);
        double sum = 0;
        for (EdgeId e : p.edges) sum += g.edge(e).length;
        EXPECT_DOUBLE_EQ(sum, p.length);
      }
    }
  }
}

TEST(ShortestPath, TieBreakIsDeterministic) {
  const Graph g = MakeGrid(4).graph.graph();
  const PathResult a = ShortestPath(g, 0, 15);
  const PathResult b = ShortestPath(g, 0, 15);
  EXPECT_EQ(a.vertices, b.vertices);
}

TEST(FaceCover, FourCycleAllVerticesNeedsOneFace) {
  const PlaneGraph g = MakeCycle(4).graph;
  const FaceCover c = ComputeFaceCover(g, g.terminals());
  EXPECT_EQ(c.gamma, 1);
  EXPECT_TRUE(c.exact);
}

TEST(FaceCover, GridThreeAllVerticesNeedsTwoFaces) {
  const PlaneGraph g = MakeGrid(3).graph;
  const FaceCover c = ComputeFaceCover(g, g.terminals());
  EXPECT_EQ(c.gamma, 2);
}

TEST(FaceCover, GridThreeCenterOnly) {
  const PlaneGraph g = MakeGrid(3).graph;
  const VertexId center[] = {4};
  EXPECT_EQ(ComputeFaceCover(g, center).gamma, 1);
}

TEST(FaceCover, EmptyTerminalsGiveZero) {
  const PlaneGraph g = MakeGrid(3).graph;
  const FaceCover c = ComputeFaceCover(g, {});
  EXPECT_EQ(c.gamma, 0);
  EXPECT_TRUE(c.faces.empty());
}

TEST(FaceCover, ExactModeMatchesExhaustiveEnumeration) {
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    RandomPlanarOptions opt;
    opt.deletion_probability = 0.25;
    const Drawing d = MakeRandomPlanar(2 + static_cast<int>(rng.UniformInt(0, 2)),
                                       2 + static_cast<int>(rng.UniformInt(0, 3)), rng, opt);
    const FaceSet faces = TraceFaces(d.graph);
    if (faces.faces.size() > 12) continue;
    std::vector<int> terms;
    for (VertexId v = 0; v < d.graph.num_vertices(); ++v) {
      if (rng.Uniform() < 0.5) terms.push_back(v);
    }
    std::vector<std::vector<int>> sets;
    for (const Face& f : faces.faces) sets.emplace_back(f.vertices.begin(), f.vertices.end());
    const int oracle = testing::BruteForceSetCover(sets, terms);
    const FaceCover c = ComputeFaceCover(faces, terms, d.graph.num_vertices());
    EXPECT_EQ(c.gamma, oracle);
    for (int t : terms) {
      bool hit = false;
      for (int f : c.faces) hit = hit || faces.faces[f].Contains(t);
      EXPECT_TRUE(hit);
    }
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(FaceCover, LargeGridFallsBackToGreedy) {
  const PlaneGraph g = MakeGrid(9).graph;
  const FaceCover c = ComputeFaceCover(g, g.terminals());
  EXPECT_FALSE(c.exact);
  EXPECT_GE(c.gamma, 1 + 49 / 4);
}

TEST(Dilation, EdgeEndpoints) {
  const Graph g = MakeCycle(4).graph.graph();
  const VertexId a[] = {0, 1};
  EXPECT_EQ(Dilation(g, a), 1.0);
}

TEST(Dilation, OppositeCornersAreDisconnected) {
  const Graph g = MakeCycle(4).graph.graph();
  const VertexId a[] = {0, 2};
  EXPECT_EQ(Dilation(g, a), kInfinity);
}

TEST(Dilation, WholeVertexSet) {
  const Graph g = MakeGrid(3).graph.graph();
  std::vector<VertexId> all(9);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(Dilation(g, all), 1.0);
}

TEST(Dilation, ThreeSidesOfFourCycle) {
  const Graph g = MakeCycle(4).graph.graph();
  const VertexId a[] = {0, 1, 2, 3};
  EXPECT_EQ(Dilation(g, a), 1.0);
  const VertexId b[] = {0, 1, 2};
  EXPECT_EQ(Dilation(g, b), 1.0);
}

TEST(GraphJson, RoundTripPreservesFacesAndTerminals) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Drawing d = MakeRandomPlanar(3, 3, rng);
    PlaneGraph g = d.graph;
    g.set_terminals({0, 4, 8});
    const PlaneGraph back = PlaneGraphFromJson(ToJson(g));
    EXPECT_EQ(ToJson(back), ToJson(g));
    EXPECT_EQ(TraceFaces(back).faces.size(), TraceFaces(g).faces.size());
    EXPECT_EQ(std::vector<VertexId>(back.terminals().begin(), back.terminals().end()),
              (std::vector<VertexId>{0, 4, 8}));
  }
}

TEST(GraphJson, ParallelEdgesKeepTheirRotation) {
  // Two parallel edges plus a pendant: rotation must be pinned per edge.
  Graph base(3);
  base.AddEdge(0, 1, 1.0);
  base.AddEdge(0, 1, 2.0);
  base.AddEdge(1, 2, 1.0);
  PlaneGraph g(std::move(base));
  g.set_rotation(1, {1, 4, 3});
  ASSERT_TRUE(Validate(g).ok);
  const PlaneGraph back = PlaneGraphFromJson(ToJson(g));
  for (VertexId v = 0; v < 3; ++v) {
    EXPECT_EQ(std::vector<DartId>(back.rotation(v).begin(), back.rotation(v).end()),
              std::vector<DartId>(g.rotation(v).begin(), g.rotation(v).end()));
  }
}

TEST(GraphDot, MentionsEveryEdge) {
  const std::string dot = ToDot(MakeCycle(4).graph);
  EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
  EXPECT_NE(dot.find("3 -- 0"), std::string::npos);
}

}  // namespace
}  // namespace planegap
