#pragma once

#include <span>
#include <vector>

#include "planegap/paths.hpp"
#include "planegap/plane_graph.hpp"
#include "planegap/rng.hpp"
#include "planegap/tree_metric.hpp"

namespace planegap {

// A map of every vertex of a graph into the nodes of a host tree.
using ThinMap = TreeSample;

struct ThinnessReport {
  std::vector<int> per_vertex;
  int max = 0;
};

// Leaves of the union of tree paths from f(u) to the images of u's
// neighbours, rooted at f(u). Every vertex must be mapped.
ThinnessReport Thinness(const ThinMap& f, const Graph& graph);

// Largest d_T(f(u), f(v)) / len(u, v) over edges at u with length in
// [tau, 2 tau]; 0 when no edge qualifies. BAD_PARAMS unless tau > 0.
double GradNorm(const ThinMap& f, const Graph& graph, VertexId u, double tau);

// The scales at which the set of edges inside [tau, 2 tau] changes; the
// maximum of GradNorm over tau > 0 is attained at one of them.
std::vector<double> CandidateScales(const Graph& graph);

struct LineMap {
  ThinMap map;                 // the values laid out on a path
  std::vector<double> value;   // distance from each vertex to the face
};

// v -> d(v, face) laid out on a path. DISCONNECTED if some vertex cannot
// reach the face, BAD_PARAMS for an empty face.
LineMap MakeLineMap(const Graph& graph, std::span<const VertexId> face);

// Tree map for one face: the face vertices are embedded with OsToTree and
// every other vertex hangs off the image of its nearest face vertex (ties
// to the smaller id) by an edge of length d(v, face).
ThinMap MakeFaceTreeMap(const PlaneGraph& graph, std::span<const VertexId> face, Rng& rng,
                        const DistanceMatrix& distances);

class MultiFaceMixture {
 public:
  // Faces given by their vertex sets.
  MultiFaceMixture(PlaneGraph graph, std::vector<std::vector<VertexId>> faces);
  // Faces from a minimum face cover of the graph's terminals.
  static MultiFaceMixture FromCover(const PlaneGraph& graph);

  int gamma() const { return static_cast<int>(faces_.size()); }
  const PlaneGraph& graph() const { return graph_; }
  const DistanceMatrix& distances() const { return distances_; }
  std::span<const std::vector<VertexId>> faces() const { return faces_; }
  const LineMap& line_map(int i) const { return lines_[i]; }

  // Options 0..gamma-1 are face tree maps, gamma..2 gamma-1 line maps.
  ThinMap Component(int option, Rng& rng) const;
  // Uniform choice among the 2 gamma options.
  ThinMap Sample(Rng& rng, int* option = nullptr) const;

 private:
  PlaneGraph graph_;
  std::vector<std::vector<VertexId>> faces_;
  DistanceMatrix distances_;
  std::vector<LineMap> lines_;
};

struct MixturePair {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  double distance = 0;
  double mean = 0;        // empirical E[d_T] under the mixture
  double stderr_ = 0;
  int face = -1;          // face containing u used for the case split
  int proof_case = 0;     // 1: v far from the face, 2: v near it
  double bound = 0;       // d / (8 gamma K0 L0)
  double case_bound = 0;  // bound of the applicable case
  bool holds = false;     // mean >= bound (1 - 2 sigma)
  bool case_holds = false;
};

struct MixtureReport {
  int gamma = 0;
  long samples = 0;
  double k0 = 1;   // face tree maps: max over faces and face pairs of d / E[d_T], at least 1
  double l0 = 1;   // face tree maps: max over v, tau of E[grad], at least 1
  double k_hat = 0;  // mixture: max over pairs of d / E[d_T]
  double l_hat = 0;  // mixture: max over v, tau of E[grad]
  int max_thinness = 0;
  int line_thinness = 0;
  std::vector<MixturePair> pairs;
  bool all_hold = true;
};

// Monte Carlo over `samples` draws per component and for the mixture, with
// draw s of stream k taken from Rng(seed, s).Substream(k).
MixtureReport MeasureMixture(const MultiFaceMixture& mixture,
                             std::span<const std::pair<VertexId, VertexId>> pairs, long samples,
                             std::uint64_t seed);

}  // namespace planegap
