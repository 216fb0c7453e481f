#include "planegap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "planegap/error.hpp"

namespace planegap {

namespace {

Drawing Finish(Graph g, std::vector<double> x, std::vector<double> y,
               bool all_terminals) {
  Drawing out{PlaneGraph(std::move(g)), std::move(x), std::move(y)};
  SetRotationFromCoordinates(out.graph, out.x, out.y);
  if (all_terminals) {
    std::vector<VertexId> terms(out.graph.num_vertices());
    std::iota(terms.begin(), terms.end(), 0);
    out.graph.set_terminals(std::move(terms));
  }
  return out;
}

}  // namespace

Drawing MakeGrid(int m) { return MakeGrid(m, m); }

Drawing MakeGrid(int rows, int cols) {
  if (rows < 1 || cols < 1) Fail(ErrorCode::kBadParams, "grid dimensions must be >= 1");
  Graph g(rows * cols);
  std::vector<double> x(rows * cols), y(rows * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      x[i * cols + j] = j;
      y[i * cols + j] = i;
    }
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) g.AddEdge(i * cols + j, i * cols + j + 1, 1.0);
  }
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < cols; ++j) g.AddEdge(i * cols + j, (i + 1) * cols + j, 1.0);
  }
  return Finish(std::move(g), std::move(x), std::move(y), true);
}

Drawing MakeCycle(int n) {
  if (n < 3) Fail(ErrorCode::kBadParams, "cycle needs n >= 3");
  Graph g(n);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = std::cos(2 * std::numbers::pi * i / n);
    y[i] = std::sin(2 * std::numbers::pi * i / n);
    g.AddEdge(i, (i + 1) % n, 1.0);
  }
  return Finish(std::move(g), std::move(x), std::move(y), true);
}

Drawing MakePath(int n) {
  if (n < 1) Fail(ErrorCode::kBadParams, "path needs n >= 1");
  Graph g(n);
  std::vector<double> x(n), y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    x[i] = i;
    if (i + 1 < n) g.AddEdge(i, i + 1, 1.0);
  }
  return Finish(std::move(g), std::move(x), std::move(y), true);
}

Drawing MakeStarPaths(int arms, int length) {
  if (arms < 1 || length < 1) Fail(ErrorCode::kBadParams, "star-paths needs m, L >= 1");
  const int n = 1 + arms * length;
  Graph g(n);
  std::vector<double> x(n, 0.0), y(n, 0.0);
  for (int a = 0; a < arms; ++a) {
    const double angle = 2 * std::numbers::pi * a / arms;
    VertexId prev = 0;
    for (int k = 1; k <= length; ++k) {
      const VertexId v = 1 + a * length + (k - 1);
      x[v] = k * std::cos(angle);
      y[v] = k * std::sin(angle);
      g.AddEdge(prev, v, 1.0);
      prev = v;
    }
  }
  return Finish(std::move(g), std::move(x), std::move(y), true);
}

Drawing MakeFan(int n) {
  if (n < 2) Fail(ErrorCode::kBadParams, "fan needs n >= 2");
  Graph g(n);
  std::vector<double> x(n), y(n);
  x[0] = 0;
  y[0] = -1;
  for (int i = 1; i < n; ++i) {
    x[i] = i - n / 2.0;
    y[i] = 1;
    g.AddEdge(0, i, 1.0);
    if (i + 1 < n) g.AddEdge(i, i + 1, 1.0);
  }
  return Finish(std::move(g), std::move(x), std::move(y), true);
}

std::vector<VertexId> GridBoundary(int rows, int cols) {
  std::vector<VertexId> out;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (i == 0 || j == 0 || i == rows - 1 || j == cols - 1) out.push_back(i * cols + j);
    }
  }
  return out;
}

Drawing MakeRandomPlanar(int rows, int cols, Rng& rng,
                         const RandomPlanarOptions& options) {
  if (rows < 1 || cols < 1) Fail(ErrorCode::kBadParams, "grid dimensions must be >= 1");
  const int n = rows * cols;
  std::vector<double> x(n), y(n);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      x[i * cols + j] = j;
      y[i * cols + j] = i;
    }
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) pairs.emplace_back(i * cols + j, i * cols + j + 1);
  }
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < cols; ++j) pairs.emplace_back(i * cols + j, (i + 1) * cols + j);
  }
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      if (rng.Uniform() < options.diagonal_probability) {
        if (rng.Coin()) {
          pairs.emplace_back(i * cols + j, (i + 1) * cols + j + 1);
        } else {
          pairs.emplace_back(i * cols + j + 1, (i + 1) * cols + j);
        }
      }
    }
  }

  // Random deletions that keep the graph connected (union-find over the
  // surviving edges, checked per candidate).
  std::vector<char> alive(pairs.size(), 1);
  if (options.deletion_probability > 0) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (rng.Uniform() >= options.deletion_probability) continue;
      alive[k] = 0;
      Graph probe(n);
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (alive[e]) probe.AddEdge(pairs[e].first, pairs[e].second, 1.0);
      }
      std::vector<int> comp;
      if (probe.Components(comp) != 1) alive[k] = 1;
    }
  }

  Graph g(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!alive[k]) continue;
    double len = options.min_length;
    if (options.max_length > options.min_length) {
      len = options.integer_lengths
                ? static_cast<double>(rng.UniformInt(
                      static_cast<std::int64_t>(options.min_length),
                      static_cast<std::int64_t>(options.max_length)))
                : rng.Uniform(options.min_length, options.max_length);
    }
    g.AddEdge(pairs[k].first, pairs[k].second, len);
  }
  return Finish(std::move(g), std::move(x), std::move(y), false);
}

}  // namespace planegap

namespace planegap {

namespace {

FlowNetwork RandomNetwork(int rows, int cols, Rng& rng, const RandomNetworkOptions& options,
                          std::vector<VertexId> eligible) {
  if (options.terminals < 2 || options.demand_pairs < 1 || options.max_capacity < 1 ||
      !(options.min_demand > 0) || options.max_demand < options.min_demand) {
    Fail(ErrorCode::kBadParams, "invalid random network options");
  }
  RandomPlanarOptions planar;
  planar.diagonal_probability = options.diagonal_probability;
  Drawing drawing = MakeRandomPlanar(rows, cols, rng, planar);
  rng.Shuffle(std::span<VertexId>(eligible));
  const int t = std::min<int>(options.terminals, static_cast<int>(eligible.size()));
  if (t < 2) Fail(ErrorCode::kBadParams, "need at least two terminals");
  std::vector<VertexId> terms(eligible.begin(), eligible.begin() + t);
  std::sort(terms.begin(), terms.end());
  drawing.graph.set_terminals(terms);
  FlowNetwork net(std::move(drawing.graph));
  for (EdgeId e = 0; e < net.graph().num_edges(); ++e) {
    net.set_capacity(e, static_cast<double>(rng.UniformInt(1, options.max_capacity)));
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) pairs.emplace_back(terms[i], terms[j]);
  }
  rng.Shuffle(std::span<std::pair<VertexId, VertexId>>(pairs));
  const int k = std::min<int>(options.demand_pairs, static_cast<int>(pairs.size()));
  for (int i = 0; i < k; ++i) {
    net.AddDemand(pairs[i].first, pairs[i].second, rng.Uniform(options.min_demand, options.max_demand));
  }
  return net;
}

}  // namespace

FlowNetwork MakeRandomOsNetwork(int rows, int cols, Rng& rng, const RandomNetworkOptions& options) {
  return RandomNetwork(rows, cols, rng, options, GridBoundary(rows, cols));
}

FlowNetwork MakeRandomNetwork(int rows, int cols, Rng& rng, const RandomNetworkOptions& options) {
  std::vector<VertexId> all(rows * cols);
  std::iota(all.begin(), all.end(), 0);
  return RandomNetwork(rows, cols, rng, options, std::move(all));
}

}  // namespace planegap

namespace planegap {

PolymatroidNetwork MakeRandomPolymatroidNetwork(int rows, int cols, CapacityKind family, Rng& rng,
                                                const RandomPolymatroidOptions& options) {
  if (rows * cols < 2 || options.demand_pairs < 1 || options.coverage_items < 1 || options.coverage_items > 64) {
    Fail(ErrorCode::kBadParams, "invalid random polymatroid options");
  }
  if (family == CapacityKind::kTable) Fail(ErrorCode::kBadParams, "tables are not generated at random");
  Drawing drawing = MakeRandomPlanar(rows, cols, rng);
  PolymatroidNetwork net(std::move(drawing.graph));
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    const int deg = static_cast<int>(net.incident(v).size());
    switch (family) {
      case CapacityKind::kConstant:
        net.set_capacity(v, VertexCapacity::Constant(rng.Uniform(1.0, 3.0)));
        break;
      case CapacityKind::kTruncatedAdditive: {
        std::vector<double> w(deg);
        double sum = 0;
        for (double& x : w) sum += (x = rng.Uniform(0.5, 2.0));
        net.set_capacity(v, VertexCapacity::TruncatedAdditive(std::move(w), rng.Uniform(std::min(1.0, sum), sum)));
        break;
      }
      case CapacityKind::kCoverage: {
        const int items = options.coverage_items;
        std::vector<double> weights(items);
        for (double& x : weights) x = rng.Uniform(0.5, 2.0);
        std::vector<std::uint64_t> covers(deg);
        for (auto& c : covers) {
          do {
            c = rng.NextU64() & ((items == 64) ? ~0ull : ((1ull << items) - 1));
          } while (c == 0);
        }
        net.set_capacity(v, VertexCapacity::Coverage(std::move(weights), std::move(covers)));
        break;
      }
      case CapacityKind::kTable:
        break;
    }
  }
  const int n = net.num_vertices();
  for (int i = 0; i < options.demand_pairs; ++i) {
    const auto s = static_cast<VertexId>(rng.UniformInt(0, n - 1));
    auto t = static_cast<VertexId>(rng.UniformInt(0, n - 2));
    if (t >= s) ++t;
    net.AddDemand(s, t, rng.Uniform(0.5, 2.0));
  }
  return net;
}

}  // namespace planegap
