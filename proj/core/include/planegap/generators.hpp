#pragma once

#include <string>

#include "planegap/flowcut.hpp"
#include "planegap/plane_graph.hpp"
#include "planegap/polymatroid.hpp"
#include "planegap/rng.hpp"

namespace planegap {

// Drawings are straight-line; rotations come from the coordinates.
struct Drawing {
  PlaneGraph graph;
  std::vector<double> x;
  std::vector<double> y;
};

// m x m grid, vertex (row, col) has id row * m + col, unit lengths, all
// vertices terminals.
Drawing MakeGrid(int m);
Drawing MakeGrid(int rows, int cols);
// Unit n-cycle (n >= 3), all vertices terminals.
Drawing MakeCycle(int n);
// Path on n vertices with unit lengths.
Drawing MakePath(int n);
// Center 0 with `arms` paths of `length` unit edges; all vertices terminals.
Drawing MakeStarPaths(int arms, int length);
// Fan: path 1..n-1 plus a hub 0 joined to every path vertex (outerplanar).
Drawing MakeFan(int n);

struct RandomPlanarOptions {
  double diagonal_probability = 0.3;
  double deletion_probability = 0.0;  // deletions never disconnect the graph
  double min_length = 1.0;
  double max_length = 1.0;
  bool integer_lengths = false;
};

// Grid-based random plane graph: optional diagonals inside grid cells,
// optional edge deletions and random lengths.
Drawing MakeRandomPlanar(int rows, int cols, Rng& rng,
                         const RandomPlanarOptions& options = {});

// Vertex ids on the outer boundary of a rows x cols grid.
std::vector<VertexId> GridBoundary(int rows, int cols);

struct RandomNetworkOptions {
  int terminals = 6;        // capped by the number of eligible vertices
  int demand_pairs = 5;     // distinct terminal pairs, capped by what exists
  int max_capacity = 3;     // integer capacities in [1, max_capacity]
  double min_demand = 0.5;
  double max_demand = 2.0;
  double diagonal_probability = 0.3;
};

// Random plane graph on a rows x cols grid with terminals drawn from the
// outer boundary, so every instance satisfies the one-face condition.
FlowNetwork MakeRandomOsNetwork(int rows, int cols, Rng& rng,
                                const RandomNetworkOptions& options = {});
// Same graph family, terminals drawn from all vertices.
FlowNetwork MakeRandomNetwork(int rows, int cols, Rng& rng,
                              const RandomNetworkOptions& options = {});

struct RandomPolymatroidOptions {
  int demand_pairs = 3;
  int coverage_items = 4;
};

// Random plane graph on a rows x cols grid where every vertex gets a random
// member of `family`; demands join random vertex pairs.
PolymatroidNetwork MakeRandomPolymatroidNetwork(int rows, int cols, CapacityKind family, Rng& rng,
                                                const RandomPolymatroidOptions& options = {});

}  // namespace planegap
