#pragma once

#include <span>
#include <utility>
#include <vector>

#include "planegap/graph.hpp"
#include "planegap/paths.hpp"
#include "planegap/rng.hpp"
#include "planegap/stats.hpp"

namespace planegap {

// A partition of the points 0..n-1 into numbered blocks.
struct Partition {
  Length delta = 0;
  std::vector<int> block_of;
  int num_blocks = 0;

  int operator()(VertexId x) const { return block_of[x]; }
  bool Separates(VertexId x, VertexId y) const { return block_of[x] != block_of[y]; }
  std::vector<std::vector<VertexId>> blocks() const;
};

// Largest within-block distance.
Length MaxBlockDiameter(const Partition& partition, const DistanceMatrix& metric);
// Throws INVARIANT_VIOLATION when a block has diameter above delta.
void RequireDiameterBound(const Partition& partition, const DistanceMatrix& metric,
                          double tolerance = 1e-9);

// Balls of one radius R ~ U[delta/4, delta/2] grown around centers in random
// order; each point joins the first center within R.
Partition CkrPartition(const DistanceMatrix& metric, Length delta, Rng& rng);

// Same, but only among `points` (others keep block -1 unless already set);
// new block ids start at `first_block`. Returns the next free block id.
int CkrPartitionSubset(const DistanceMatrix& metric, std::span<const VertexId> points,
                       Length delta, Rng& rng, int first_block, std::vector<int>& block_of);

// Three rounds of randomly shifted shortest-path annuli of width delta/3
// from a random root inside each current piece (distances within the
// piece), splitting into connected components of each annulus, then CKR
// inside every piece under `metric`.
Partition PlanarPartition(const Graph& graph, const DistanceMatrix& metric, Length delta, Rng& rng);

enum class PartitionScheme { kCkr, kPlanar };

const char* ToString(PartitionScheme scheme);
PartitionScheme ParsePartitionScheme(const std::string& name);

// Immutable sampler; every draw takes its own RNG stream. `graph` is only
// used by the planar scheme and must outlive the sampler.
class PartitionSampler {
 public:
  PartitionSampler(PartitionScheme scheme, const DistanceMatrix& metric, const Graph* graph = nullptr);

  Partition Sample(Length delta, Rng& rng) const;
  PartitionScheme scheme() const { return scheme_; }
  const DistanceMatrix& metric() const { return *metric_; }

 private:
  PartitionScheme scheme_;
  const DistanceMatrix* metric_;
  const Graph* graph_;
};

struct PairSeparation {
  VertexId x = kNoVertex;
  VertexId y = kNoVertex;
  Length distance = 0;
  long separated = 0;
  long samples = 0;
  double probability = 0;
  Interval ci;         // Wilson interval on the probability
  double ratio = 0;    // probability * delta / distance
};

struct BetaEstimate {
  double beta = 0;
  Interval ci;  // Wilson bounds of the maximizing pair, scaled
  Length delta = 0;
  long samples = 0;
  Length max_diameter = 0;  // over all draws
  std::vector<PairSeparation> pairs;  // zero-distance pairs omitted
};

// Max over pairs of the empirical separation probability times delta / d.
// Every draw is checked against the diameter bound.
BetaEstimate EstimateBeta(const PartitionSampler& sampler, Length delta,
                          std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                          std::uint64_t seed);

// Estimates at every dyadic scale delta = 2^j between the smallest positive
// distance and the diameter of the metric; `beta` is the largest of them.
struct ScaledBetaEstimate {
  double beta = 0;
  Length argmax_delta = 0;
  std::vector<BetaEstimate> per_scale;
};

ScaledBetaEstimate EstimateBetaOverScales(const PartitionSampler& sampler,
                                          std::span<const std::pair<VertexId, VertexId>> pairs,
                                          long samples, std::uint64_t seed);

// Every pair of points at positive finite distance.
std::vector<std::pair<VertexId, VertexId>> AllPairs(const DistanceMatrix& metric);

}  // namespace planegap
