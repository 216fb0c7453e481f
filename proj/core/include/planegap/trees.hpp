#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "planegap/paths.hpp"
#include "planegap/plane_graph.hpp"
#include "planegap/rng.hpp"
#include "planegap/stats.hpp"
#include "planegap/tree_metric.hpp"

namespace planegap {

// Hierarchical random-permutation decomposition with a random scale factor
// in [1, 2). Each internal node sits at height half the largest distance it
// separates (tree distances are ultrametric), so every sample dominates the
// metric. Points at
// distance 0 share a leaf. `points` name the rows of `metric` (identity when
// empty).
TreeSample FrtEmbed(const DistanceMatrix& metric, Rng& rng, std::span<const VertexId> points = {});

// Embeds the union of vertex paths that all end at a common vertex. Each
// path must be a shortest path in `graph`. A union that is a single path is
// embedded isometrically; otherwise FRT is run on the induced submetric.
// Throws NOT_SHORTEST_PATH.
TreeSample PathUnionEmbed(const Graph& graph, std::span<const std::vector<VertexId>> paths, Rng& rng,
                          const DistanceMatrix* distances = nullptr);

// True when some face of a connected drawing contains every vertex.
bool IsOuterplanar(const PlaneGraph& graph);

// Spanning tree that keeps the edges with the largest exponential clocks
// (rate = length): on every cycle the discarded edge is chosen with
// probability proportional to its length. Tree distances are path lengths
// in a subgraph, hence dominating. Throws NOT_OUTERPLANAR.
TreeSample OuterplanarToTree(const PlaneGraph& graph, Rng& rng);

// Terminal embedding of an instance whose terminals lie on one face. Fully
// outerplanar inputs use OuterplanarToTree; otherwise FRT on the terminal
// submetric. Throws NOT_OS_INSTANCE.
TreeSample OsToTree(const PlaneGraph& graph, Rng& rng, const DistanceMatrix* distances = nullptr);

using TreeSampler = std::function<TreeSample(Rng&)>;

struct PairStretch {
  VertexId x = kNoVertex;
  VertexId y = kNoVertex;
  Length distance = 0;
  MeanSummary tree_distance;
  double mean_stretch = 0;
  Interval ci;  // of the stretch
  double max_stretch = 0;
};

struct StretchReport {
  std::vector<PairStretch> pairs;
  double dist = 0;     // max over pairs of the mean stretch
  int argmax = -1;
  Interval dist_ci;    // ci of the maximizing pair
  long samples = 0;
  double min_ratio = kInfinity;  // smallest d_T / d over all samples
};

// Samples use Rng(seed, s) for s = 0..samples-1 and may run in parallel.
// Throws DOMINATION_VIOLATION if some sample has d_T < d - tolerance on a
// pair. Zero-distance pairs are skipped.
StretchReport MeasureStretch(const TreeSampler& sampler, const DistanceMatrix& metric,
                             std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                             std::uint64_t seed, double tolerance = 1e-9);

// Generic form: `fill(rng, pairs, out)` writes the sampled distance of
// every pair into out (same order as `pairs`, zero-distance pairs removed).
using PairDistanceFill = std::function<void(Rng&, std::span<const std::pair<VertexId, VertexId>>,
                                            std::vector<Length>&)>;
StretchReport MeasurePairStretch(const PairDistanceFill& fill, const DistanceMatrix& metric,
                                 std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                                 std::uint64_t seed, double tolerance = 1e-9);

// Exact domination check on every pair of mapped points.
bool Dominates(const TreeSample& sample, const DistanceMatrix& metric, double tolerance = 1e-9);

// Pairs of distinct vertices from `points`.
std::vector<std::pair<VertexId, VertexId>> PairsOf(std::span<const VertexId> points);

}  // namespace planegap
