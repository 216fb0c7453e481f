#include "planegap/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "planegap/error.hpp"
#include "planegap/faces.hpp"
#include "planegap/flowcut.hpp"
#include "planegap/generators.hpp"
#include "planegap/graph_io.hpp"
#include "planegap/pipeline.hpp"
#include "planegap/polymatroid.hpp"
#include "planegap/trees.hpp"

namespace planegap {

std::string GeneratorSpec::ToString() const {
  std::string out = kind;
  for (std::size_t i = 0; i < params.size(); ++i) {
    out += (i == 0 ? ":" : "x") + std::to_string(params[i]);
  }
  return out;
}

GeneratorSpec ParseGeneratorSpec(const std::string& text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string part;
    while (std::getline(rest, part, 'x')) {
      try {
        std::size_t used = 0;
        spec.params.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        Fail(ErrorCode::kBadParams, "bad generator size '" + part + "'");
      }
    }
  }
  return spec;
}

namespace {

void RequireSizes(const GeneratorSpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    Fail(ErrorCode::kBadParams, "generator '" + spec.kind + "' takes " + std::to_string(count) + " size(s)");
  }
  for (int p : spec.params) {
    if (p < 1) Fail(ErrorCode::kBadParams, "generator sizes must be >= 1");
  }
}

// rows x cols with rows = floor(sqrt n) and at least n vertices.
std::pair<int, int> GridShape(int n, int rows) {
  const int cols = (n + rows - 1) / rows;
  return {rows, std::max(cols, 1)};
}

}  // namespace

nlohmann::json Generate(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const std::string& k = spec.kind;
  if (k == "grid") {
    if (spec.params.size() == 1) {
      RequireSizes(spec, 1);
      return ToJson(MakeGrid(spec.params[0]).graph);
    }
    RequireSizes(spec, 2);
    return ToJson(MakeGrid(spec.params[0], spec.params[1]).graph);
  }
  if (k == "cycle") {
    RequireSizes(spec, 1);
    return ToJson(MakeCycle(spec.params[0]).graph);
  }
  if (k == "path") {
    RequireSizes(spec, 1);
    return ToJson(MakePath(spec.params[0]).graph);
  }
  if (k == "star-paths") {
    RequireSizes(spec, 2);
    return ToJson(MakeStarPaths(spec.params[0], spec.params[1]).graph);
  }
  if (k == "random-os") {
    RequireSizes(spec, 1);
    const int n = spec.params[0];
    if (n < 4) Fail(ErrorCode::kBadParams, "random-os needs n >= 4");
    const auto [rows, cols] = GridShape(n, std::max(2, static_cast<int>(std::sqrt(n))));
    return ToJson(MakeRandomOsNetwork(rows, cols, rng));
  }
  if (k == "random-poly") {
    RequireSizes(spec, 1);
    const int n = spec.params[0];
    if (n < 2) Fail(ErrorCode::kBadParams, "random-poly needs n >= 2");
    const auto [rows, cols] = GridShape(n, n >= 4 ? 2 : 1);
    const CapacityKind kinds[] = {CapacityKind::kConstant, CapacityKind::kTruncatedAdditive, CapacityKind::kCoverage};
    return ToJson(MakeRandomPolymatroidNetwork(rows, cols, kinds[seed % 3], rng));
  }
  Fail(ErrorCode::kBadParams, "unknown generator '" + k + "'");
}

std::string ToString(Pipeline pipeline) {
  switch (pipeline) {
    case Pipeline::kEmbed:
      return "embed";
    case Pipeline::kGap:
      return "gap";
    case Pipeline::kPolygap:
      return "polygap";
    case Pipeline::kPartition:
      return "partition";
  }
  return "?";
}

Pipeline ParsePipeline(const std::string& name) {
  for (Pipeline p : {Pipeline::kEmbed, Pipeline::kGap, Pipeline::kPolygap, Pipeline::kPartition}) {
    if (ToString(p) == name) return p;
  }
  Fail(ErrorCode::kBadParams, "unknown pipeline '" + name + "'");
}

nlohmann::json ToJson(const ExperimentSpec& spec) {
  return {{"pipeline", ToString(spec.pipeline)},
          {"input", spec.input},
          {"generator", spec.generator},
          {"samples", spec.samples},
          {"seed", spec.seed},
          {"epsilon", spec.epsilon},
          {"scheme", ToString(spec.scheme)},
          {"inject_contraction", spec.inject_contraction}};
}

std::string ConfigHash(const ExperimentSpec& spec) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : ToJson(spec).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

template <typename F>
auto Stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), name + ": " + e.detail());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvariantViolation, name + ": " + e.what());
  }
}

std::string Label(const PlaneGraph& g, VertexId v) { return std::to_string(g.label(v)); }

int DemandGamma(const PlaneGraph& g, std::span<const Demand> demands) {
  std::vector<VertexId> ends;
  for (const Demand& d : demands) {
    if (d.amount > 0) {
      ends.push_back(d.s);
      ends.push_back(d.t);
    }
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  return ComputeFaceCover(g, ends).gamma;
}

void RunEmbed(const ExperimentSpec& spec, const nlohmann::json& doc, RunReport& report) {
  const PlaneGraph g = Stage("load", [&] { return PlaneGraphFromJson(doc); });
  Stage("validate", [&] { RequireValid(g); });
  EmbedderOptions options;
  options.scheme = spec.scheme;
  const TerminalTreeEmbedder emb = Stage("surgery", [&] { return TerminalTreeEmbedder(g, options); });
  report.gamma = emb.gamma();
  if (emb.trace()) report.trace = ToJson(*emb.trace());
  const TreeSampler sampler = [&](Rng& rng) {
    TreeSample t = emb.Sample(rng);
    if (spec.inject_contraction) {
      for (int x = 1; x < t.tree.num_nodes(); ++x) t.tree.set_length(x, t.tree.length(x) / 2);
      t.tree.Refresh();
    }
    return t;
  };
  const auto pairs = PairsOf(g.terminals());
  const StretchReport stretch =
      Stage("measure", [&] { return MeasureStretch(sampler, emb.distances(), pairs, spec.samples, spec.seed); });
  for (const PairStretch& p : stretch.pairs) {
    report.rows.push_back({report.instance, Label(g, p.x) + "-" + Label(g, p.y), p.distance, p.tree_distance.mean,
                           p.mean_stretch, spec.samples, p.ci.lo, p.ci.hi});
  }
  report.summary = {{"gamma", emb.gamma()},
                    {"used_surgery", emb.used_surgery()},
                    {"a_size", emb.a_set().size()},
                    {"pairs", stretch.pairs.size()},
                    {"max_pair_stretch", stretch.dist},
                    {"samples", spec.samples}};
  if (stretch.argmax >= 0) {
    const PairStretch& p = stretch.pairs[stretch.argmax];
    report.summary["argmax_pair"] = Label(g, p.x) + "-" + Label(g, p.y);
  }
}

void RunGap(const ExperimentSpec& spec, const nlohmann::json& doc, RunReport& report) {
  FlowNetwork net = Stage("load", [&] { return FlowNetworkFromJson(doc); });
  Stage("validate", [&] { RequireValid(net.plane()); });
  if (net.demands().empty()) {
    const auto terms = net.plane().terminals();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) net.AddDemand(terms[i], terms[j], 1.0);
    }
  }
  const GapResult r = Stage("gap", [&] { return FlowCutGap(net, spec.epsilon); });
  Stage("certify", [&] {
    if (!CheckFlow(net, r.flow)) Fail(ErrorCode::kInvariantViolation, "flow violates capacities or demands");
    if (r.gap < 1 - spec.epsilon) Fail(ErrorCode::kInvariantViolation, "gap below 1 - epsilon");
  });
  report.gamma = DemandGamma(net.plane(), net.demands());
  report.gaps.push_back(r.gap);
  std::vector<std::int64_t> side;
  for (VertexId v : r.cut.side) side.push_back(net.plane().label(v));
  report.summary = {{"lambda", r.flow.lambda},   {"upper_bound", r.flow.upper_bound},
                    {"phases", r.flow.phases},   {"sparsity", r.cut.sparsity},
                    {"cut_side", side},          {"gap", r.gap},
                    {"epsilon", spec.epsilon},   {"gamma", report.gamma},
                    {"demands", net.demands().size()}};
}

void RunPolygap(const nlohmann::json& doc, RunReport& report) {
  const PolymatroidNetwork net = Stage("load", [&] { return PolymatroidNetworkFromJson(doc); });
  Stage("validate", [&] {
    RequireValid(net.plane());
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      const int deg = static_cast<int>(net.incident(v).size());
      if (deg <= 12 && !CheckSubmodular(net.capacity(v), deg)) {
        Fail(ErrorCode::kInvariantViolation, "capacity at vertex " + Label(net.plane(), v) + " is not a polymatroid");
      }
    }
  });
  const PolyFlowResult flow = Stage("mcf", [&] { return PolyMcf(net); });
  const PolyCutResult cut = Stage("sparsest", [&] { return PolySparsest(net); });
  Stage("certify", [&] {
    if (!Feasible(net, flow.edge_flow, 1e-7)) Fail(ErrorCode::kInvariantViolation, "LP flow is infeasible");
    if (flow.epsilon > cut.sparsity + 1e-6) Fail(ErrorCode::kInvariantViolation, "weak duality violated");
  });
  const double gap = cut.sparsity / flow.epsilon;
  report.gamma = DemandGamma(net.plane(), net.demands());
  report.gaps.push_back(gap);
  report.summary = {{"mcf", flow.epsilon},         {"sparsity", cut.sparsity}, {"cut_edges", cut.edges},
                    {"exhaustive", cut.exhaustive}, {"gap", gap},              {"paths", flow.paths.size()},
                    {"lp_rows", flow.lp_rows},      {"gamma", report.gamma}};
}

void RunPartition(const ExperimentSpec& spec, const nlohmann::json& doc, RunReport& report) {
  const PlaneGraph g = Stage("load", [&] { return PlaneGraphFromJson(doc); });
  Stage("validate", [&] { RequireValid(g); });
  const DistanceMatrix metric = DistanceMatrix::AllPairs(g.graph());
  const PartitionSampler sampler(spec.scheme, metric, &g.graph());
  const auto pairs = AllPairs(metric);
  const ScaledBetaEstimate est =
      Stage("partition", [&] { return EstimateBetaOverScales(sampler, pairs, spec.samples, spec.seed); });
  nlohmann::json scales = nlohmann::json::array();
  for (const BetaEstimate& b : est.per_scale) {
    scales.push_back({{"delta", b.delta},
                      {"beta", b.beta},
                      {"ci", {b.ci.lo, b.ci.hi}},
                      {"max_diameter", b.max_diameter},
                      {"samples", b.samples}});
  }
  report.summary = {{"scheme", ToString(spec.scheme)}, {"beta", est.beta}, {"argmax_delta", est.argmax_delta},
                    {"scales", std::move(scales)}};
}

}  // namespace

RunReport RunExperiment(const ExperimentSpec& spec) {
  if (!spec.has_seed) Fail(ErrorCode::kBadParams, "a seed is required");
  if (spec.samples < 2) Fail(ErrorCode::kBadParams, "at least 2 samples are required");
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.pipeline = ToString(spec.pipeline);
  report.config_hash = ConfigHash(spec);
  nlohmann::json doc;
  if (!spec.input.empty()) {
    doc = Stage("load", [&] { return ReadJsonFile(spec.input); });
    report.instance = std::filesystem::path(spec.input).stem().string();
  } else if (!spec.generator.empty()) {
    const GeneratorSpec gen = Stage("generate", [&] { return ParseGeneratorSpec(spec.generator); });
    doc = Stage("generate", [&] { return Generate(gen, spec.seed); });
    report.instance = gen.ToString();
  } else {
    Fail(ErrorCode::kBadParams, "either an input file or a generator is required");
  }
  switch (spec.pipeline) {
    case Pipeline::kEmbed:
      RunEmbed(spec, doc, report);
      break;
    case Pipeline::kGap:
      RunGap(spec, doc, report);
      break;
    case Pipeline::kPolygap:
      RunPolygap(doc, report);
      break;
    case Pipeline::kPartition:
      RunPartition(spec, doc, report);
      break;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::string Number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void ValidateRow(const StretchRow& r) {
  const double values[] = {r.d_g, r.mean_dt, r.stretch, r.ci_lo, r.ci_hi};
  for (double v : values) {
    if (!std::isfinite(v)) Fail(ErrorCode::kInvariantViolation, "non-finite value in row " + r.pair);
  }
  if (r.instance.empty() || r.pair.empty() || r.samples < 1 || !(r.d_g > 0)) {
    Fail(ErrorCode::kInvariantViolation, "malformed row " + r.pair);
  }
  if (r.stretch < 1 - 1e-9) Fail(ErrorCode::kInvariantViolation, "stretch below 1 in row " + r.pair);
  if (r.ci_lo > r.stretch + 1e-12 || r.ci_hi < r.stretch - 1e-12) {
    Fail(ErrorCode::kInvariantViolation, "interval misses the mean in row " + r.pair);
  }
}

}  // namespace

std::string ToCsv(const RunReport& report) {
  std::string out = "instance,pair,d_G,mean_dT,stretch,samples,ci_lo,ci_hi\n";
  for (const StretchRow& r : report.rows) {
    ValidateRow(r);
    out += CsvField(r.instance) + "," + CsvField(r.pair) + "," + Number(r.d_g) + "," + Number(r.mean_dt) + "," +
           Number(r.stretch) + "," + std::to_string(r.samples) + "," + Number(r.ci_lo) + "," + Number(r.ci_hi) + "\n";
  }
  return out;
}

nlohmann::json ToJson(const RunReport& report) {
  nlohmann::json doc = {{"instance", report.instance},
                        {"pipeline", report.pipeline},
                        {"config_hash", report.config_hash},
                        {"gamma", report.gamma},
                        {"gaps", report.gaps},
                        {"rows", report.rows.size()},
                        {"summary", report.summary}};
  return doc;
}

void WriteOutputs(const ExperimentSpec& spec, const RunReport& report) {
  if (!spec.csv_out.empty()) WriteTextFile(spec.csv_out, ToCsv(report));
  if (!spec.json_out.empty()) WriteTextFile(spec.json_out, ToJson(report).dump(2) + "\n");
  if (!spec.trace_out.empty()) {
    WriteTextFile(spec.trace_out, (report.trace.is_null() ? nlohmann::json::object() : report.trace).dump(2) + "\n");
  }
}

}  // namespace planegap
