#include "planegap/faces.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

namespace planegap {

bool Face::Contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

FaceSet TraceFaces(const PlaneGraph& graph) {
  if (!graph.RotationIsConsistent()) {
    Fail(ErrorCode::kRotationMismatch, "cannot trace faces");
  }
  const Graph& g = graph.graph();
  FaceSet out;
  out.face_of_dart.assign(g.num_darts(), -1);
  for (DartId start = 0; start < g.num_darts(); ++start) {
    if (out.face_of_dart[start] >= 0) continue;
    Face face;
    const int id = static_cast<int>(out.faces.size());
    DartId d = start;
    do {
      out.face_of_dart[d] = id;
      face.darts.push_back(d);
      face.walk.push_back(g.tail(d));
      d = graph.FaceNext(d);
    } while (d != start);
    face.vertices = face.walk;
    std::sort(face.vertices.begin(), face.vertices.end());
    face.vertices.erase(std::unique(face.vertices.begin(), face.vertices.end()),
                        face.vertices.end());
    out.faces.push_back(std::move(face));
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) {
      Face face;
      face.walk = {v};
      face.vertices = {v};
      out.faces.push_back(std::move(face));
    }
  }
  return out;
}

namespace {

using Bits = std::vector<std::uint64_t>;

int PopCount(const Bits& b) {
  int c = 0;
  for (auto w : b) c += std::popcount(w);
  return c;
}

int PopCountAndNot(const Bits& a, const Bits& mask) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & ~mask[i]);
  return c;
}

struct CoverSearch {
  std::vector<Bits> cover;           // terminal bitset per candidate face
  std::vector<std::vector<int>> by_terminal;  // candidate faces per terminal
  int num_terms = 0;
  int max_cover = 1;
  std::vector<int> best;
  std::vector<int> current;

  void Run(Bits covered, int covered_count) {
    if (covered_count == num_terms) {
      if (best.empty() || current.size() < best.size()) best = current;
      return;
    }
    const int remaining = num_terms - covered_count;
    const int lower = static_cast<int>(current.size()) +
                      (remaining + max_cover - 1) / max_cover;
    if (!best.empty() && lower >= static_cast<int>(best.size())) return;
    // Branch on the uncovered terminal with the fewest covering faces.
    int pick = -1;
    std::size_t fewest = SIZE_MAX;
    for (int t = 0; t < num_terms; ++t) {
      if (covered[t / 64] >> (t % 64) & 1) continue;
      if (by_terminal[t].size() < fewest) {
        fewest = by_terminal[t].size();
        pick = t;
      }
    }
    for (int f : by_terminal[pick]) {
      Bits next = covered;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] |= cover[f][i];
      current.push_back(f);
      Run(next, PopCount(next));
      current.pop_back();
    }
  }
};

}  // namespace

FaceCover ComputeFaceCover(const FaceSet& faces, std::span<const VertexId> terms,
                           int num_vertices) {
  FaceCover result;
  std::vector<int> term_index(num_vertices, -1);
  int k = 0;
  for (VertexId t : terms) {
    if (t < 0 || t >= num_vertices) Fail(ErrorCode::kBadVertex, "terminal out of range");
    if (term_index[t] < 0) term_index[t] = k++;
  }
  if (k == 0) return result;

  const std::size_t words = (k + 63) / 64;
  std::vector<int> candidate_ids;
  std::vector<Bits> covers;
  for (std::size_t f = 0; f < faces.faces.size(); ++f) {
    Bits b(words, 0);
    bool any = false;
    for (VertexId v : faces.faces[f].vertices) {
      if (term_index[v] >= 0) {
        b[term_index[v] / 64] |= std::uint64_t{1} << (term_index[v] % 64);
        any = true;
      }
    }
    if (any) {
      candidate_ids.push_back(static_cast<int>(f));
      covers.push_back(std::move(b));
    }
  }

  const int m = static_cast<int>(candidate_ids.size());
  if (m <= kExactFaceCoverLimit) {
    CoverSearch search;
    search.cover = covers;
    search.num_terms = k;
    search.by_terminal.resize(k);
    for (int f = 0; f < m; ++f) {
      search.max_cover = std::max(search.max_cover, PopCount(covers[f]));
      for (int t = 0; t < k; ++t) {
        if (covers[f][t / 64] >> (t % 64) & 1) search.by_terminal[t].push_back(f);
      }
    }
    search.Run(Bits(words, 0), 0);
    for (int f : search.best) result.faces.push_back(candidate_ids[f]);
    result.exact = true;
  } else {
    Bits covered(words, 0);
    int covered_count = 0;
    while (covered_count < k) {
      int pick = -1;
      int gain = 0;
      for (int f = 0; f < m; ++f) {
        const int g = PopCountAndNot(covers[f], covered);
        if (g > gain) {
          gain = g;
          pick = f;
        }
      }
      for (std::size_t i = 0; i < words; ++i) covered[i] |= covers[pick][i];
      covered_count = PopCount(covered);
      result.faces.push_back(candidate_ids[pick]);
    }
    result.exact = false;
  }
  std::sort(result.faces.begin(), result.faces.end());
  result.gamma = static_cast<int>(result.faces.size());
  return result;
}

FaceCover ComputeFaceCover(const PlaneGraph& graph,
                           std::span<const VertexId> terms) {
  return ComputeFaceCover(TraceFaces(graph), terms, graph.num_vertices());
}

}  // namespace planegap
