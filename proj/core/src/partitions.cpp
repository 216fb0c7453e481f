#include "planegap/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "planegap/error.hpp"

namespace planegap {

std::vector<std::vector<VertexId>> Partition::blocks() const {
  std::vector<std::vector<VertexId>> out(num_blocks);
  for (VertexId v = 0; v < static_cast<VertexId>(block_of.size()); ++v) out[block_of[v]].push_back(v);
  return out;
}

Length MaxBlockDiameter(const Partition& partition, const DistanceMatrix& metric) {
  Length worst = 0;
  for (const auto& block : partition.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        worst = std::max(worst, metric(block[i], block[j]));
      }
    }
  }
  return worst;
}

void RequireDiameterBound(const Partition& partition, const DistanceMatrix& metric,
                          double tolerance) {
  const Length diameter = MaxBlockDiameter(partition, metric);
  if (diameter > partition.delta + tolerance) {
    Fail(ErrorCode::kInvariantViolation, "block diameter " + std::to_string(diameter) +
                                             " exceeds delta " + std::to_string(partition.delta));
  }
}

int CkrPartitionSubset(const DistanceMatrix& metric, std::span<const VertexId> points,
                       Length delta, Rng& rng, int first_block, std::vector<int>& block_of) {
  if (points.empty()) return first_block;
  std::vector<VertexId> order(points.begin(), points.end());
  rng.Shuffle(std::span<VertexId>(order));
  const Length radius = rng.Uniform(delta / 4, delta / 2);
  // Center index -> block id, assigned lazily in order of first use.
  std::vector<int> block_of_center(order.size(), -1);
  int next = first_block;
  for (VertexId x : points) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (metric(order[i], x) <= radius) {
        if (block_of_center[i] < 0) block_of_center[i] = next++;
        block_of[x] = block_of_center[i];
        break;
      }
    }
  }
  return next;
}

namespace {

// Renumber blocks by smallest member so equal partitions compare equal.
void Canonicalize(Partition& p) {
  std::vector<int> renumber(p.block_of.size() + 1, -1);
  int next = 0;
  for (int& b : p.block_of) {
    if (renumber[b] < 0) renumber[b] = next++;
    b = renumber[b];
  }
  p.num_blocks = next;
}

// True when every pair in `points` is within delta; stops at the first
// violation.
bool WithinDiameter(const DistanceMatrix& metric, std::span<const VertexId> points, Length delta) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (metric(points[i], points[j]) > delta) return false;
    }
  }
  return true;
}

}  // namespace

Partition CkrPartition(const DistanceMatrix& metric, Length delta, Rng& rng) {
  if (!(delta > 0)) Fail(ErrorCode::kBadParams, "delta must be positive");
  Partition p;
  p.delta = delta;
  p.block_of.assign(metric.size(), -1);
  std::vector<VertexId> points(metric.size());
  std::iota(points.begin(), points.end(), 0);
  CkrPartitionSubset(metric, points, delta, rng, 0, p.block_of);
  Canonicalize(p);
  return p;
}

Partition PlanarPartition(const Graph& graph, const DistanceMatrix& metric, Length delta, Rng& rng) {
  if (!(delta > 0)) Fail(ErrorCode::kBadParams, "delta must be positive");
  const int n = graph.num_vertices();
  if (metric.size() != n) Fail(ErrorCode::kVertexSetMismatch, "metric does not match graph");
  std::vector<int> piece;
  int num_pieces = graph.Components(piece);
  const Length width = delta / 3;

  std::vector<Length> dist(n);
  using Item = std::pair<Length, VertexId>;
  for (int round = 0; round < 3; ++round) {
    std::vector<std::vector<VertexId>> members(num_pieces);
    for (VertexId v = 0; v < n; ++v) members[piece[v]].push_back(v);
    // Distances inside each piece from a random root.
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<double> shift(num_pieces);
    std::vector<char> whole(num_pieces, 0);
    for (int p = 0; p < num_pieces; ++p) {
      // A piece that already meets the bound is never cut further.
      if (WithinDiameter(metric, members[p], delta)) {
        whole[p] = 1;
        continue;
      }
      const VertexId root = members[p][rng.UniformInt(0, static_cast<std::int64_t>(members[p].size()) - 1)];
      shift[p] = rng.Uniform(0, width);
      dist[root] = 0;
      heap.push({0, root});
    }
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (DartId e : graph.out_darts(v)) {
        const VertexId w = graph.head(e);
        if (piece[w] != piece[v]) continue;
        const Length nd = d + graph.length(e);
        if (nd < dist[w]) {
          dist[w] = nd;
          heap.push({nd, w});
        }
      }
    }
    std::vector<long> ring(n);
    for (VertexId v = 0; v < n; ++v) {
      ring[v] = whole[piece[v]] ? 0 : static_cast<long>(std::floor((dist[v] + shift[piece[v]]) / width));
    }
    // Connected components of (piece, ring) classes.
    std::vector<int> next_piece(n, -1);
    int count = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
      if (next_piece[s] >= 0) continue;
      next_piece[s] = count;
      stack.push_back(s);
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (DartId e : graph.out_darts(v)) {
          const VertexId w = graph.head(e);
          if (next_piece[w] < 0 && piece[w] == piece[v] && ring[w] == ring[v]) {
            next_piece[w] = count;
            stack.push_back(w);
          }
        }
      }
      ++count;
    }
    piece = std::move(next_piece);
    num_pieces = count;
  }

  Partition p;
  p.delta = delta;
  p.block_of.assign(n, -1);
  std::vector<std::vector<VertexId>> members(num_pieces);
  for (VertexId v = 0; v < n; ++v) members[piece[v]].push_back(v);
  int next = 0;
  for (const auto& m : members) {
    if (WithinDiameter(metric, m, delta)) {
      for (VertexId v : m) p.block_of[v] = next;
      ++next;
    } else {
      next = CkrPartitionSubset(metric, m, delta, rng, next, p.block_of);
    }
  }
  Canonicalize(p);
  return p;
}

const char* ToString(PartitionScheme scheme) {
  return scheme == PartitionScheme::kCkr ? "ckr" : "planar";
}

PartitionScheme ParsePartitionScheme(const std::string& name) {
  if (name == "ckr") return PartitionScheme::kCkr;
  if (name == "planar") return PartitionScheme::kPlanar;
  Fail(ErrorCode::kBadParams, "unknown partition scheme '" + name + "'");
}

PartitionSampler::PartitionSampler(PartitionScheme scheme, const DistanceMatrix& metric,
                                   const Graph* graph)
    : scheme_(scheme), metric_(&metric), graph_(graph) {
  if (scheme == PartitionScheme::kPlanar && graph == nullptr) {
    Fail(ErrorCode::kBadParams, "planar scheme needs a graph");
  }
}

Partition PartitionSampler::Sample(Length delta, Rng& rng) const {
  return scheme_ == PartitionScheme::kCkr ? CkrPartition(*metric_, delta, rng)
                                          : PlanarPartition(*graph_, *metric_, delta, rng);
}

std::vector<std::pair<VertexId, VertexId>> AllPairs(const DistanceMatrix& metric) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (int i = 0; i < metric.size(); ++i) {
    for (int j = i + 1; j < metric.size(); ++j) {
      const Length d = metric(i, j);
      if (d > 0 && d < kInfinity) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

BetaEstimate EstimateBeta(const PartitionSampler& sampler, Length delta,
                          std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                          std::uint64_t seed) {
  if (samples < 100) Fail(ErrorCode::kBadParams, "at least 100 samples are required");
  const DistanceMatrix& metric = sampler.metric();
  BetaEstimate est;
  est.delta = delta;
  est.samples = samples;
  for (auto [x, y] : pairs) {
    const Length d = metric(x, y);
    if (!(d > 0)) continue;  // zero-distance pairs carry no constraint
    PairSeparation pair;
    pair.x = x;
    pair.y = y;
    pair.distance = d;
    est.pairs.push_back(pair);
  }
  for (long s = 0; s < samples; ++s) {
    Rng rng(seed, static_cast<std::uint64_t>(s));
    const Partition p = sampler.Sample(delta, rng);
    RequireDiameterBound(p, metric);
    est.max_diameter = std::max(est.max_diameter, MaxBlockDiameter(p, metric));
    for (PairSeparation& pair : est.pairs) pair.separated += p.Separates(pair.x, pair.y) ? 1 : 0;
  }
  for (PairSeparation& pair : est.pairs) {
    pair.samples = samples;
    pair.probability = static_cast<double>(pair.separated) / static_cast<double>(samples);
    pair.ci = WilsonInterval(pair.separated, samples);
    const double scale = pair.distance == kInfinity ? 0.0 : delta / pair.distance;
    pair.ratio = pair.probability * scale;
    est.beta = std::max(est.beta, pair.ratio);
    est.ci.lo = std::max(est.ci.lo, pair.ci.lo * scale);
    est.ci.hi = std::max(est.ci.hi, pair.ci.hi * scale);
  }
  return est;
}

ScaledBetaEstimate EstimateBetaOverScales(const PartitionSampler& sampler,
                                          std::span<const std::pair<VertexId, VertexId>> pairs,
                                          long samples, std::uint64_t seed) {
  const DistanceMatrix& metric = sampler.metric();
  const Length lo = metric.MinPositive();
  const Length hi = metric.Diameter();
  ScaledBetaEstimate out;
  if (!(lo > 0) || lo == kInfinity) return out;
  int j = static_cast<int>(std::floor(std::log2(lo)));
  for (Length delta = std::ldexp(1.0, j); delta <= 2 * hi; delta *= 2, ++j) {
    BetaEstimate est = EstimateBeta(sampler, delta, pairs, samples, seed + static_cast<std::uint64_t>(j + 1024));
    if (est.beta > out.beta) {
      out.beta = est.beta;
      out.argmax_delta = delta;
    }
    out.per_scale.push_back(std::move(est));
  }
  return out;
}

}  // namespace planegap
