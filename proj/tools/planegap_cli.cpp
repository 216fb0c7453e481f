#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planegap/error.hpp"
#include "planegap/experiment.hpp"
#include "planegap/faces.hpp"
#include "planegap/graph_io.hpp"

using namespace planegap;

namespace {

struct RunFlags {
  std::string input;
  std::string gen;
  long samples = 200;
  std::uint64_t seed = 0;
  double epsilon = 0.02;
  std::string scheme = "planar";
  std::string out;
  std::string csv;
  std::string trace;
  bool inject = false;
};

void AddSource(CLI::App* cmd, RunFlags& f) {
  auto* in = cmd->add_option("--input,-i", f.input, "Input JSON file")->check(CLI::ExistingFile);
  auto* gen = cmd->add_option("--gen,-g", f.gen, "Generator, e.g. grid:4, cycle:5, star-paths:3x2, random-os:12");
  in->excludes(gen);
}

void AddSeed(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--seed,-s", f.seed, "Random seed")->required();
}

void AddOutputs(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--out,-o", f.out, "JSON report path");
  cmd->add_option("--csv", f.csv, "Per-pair CSV path");
}

ExperimentSpec ToSpec(Pipeline p, const RunFlags& f) {
  ExperimentSpec spec;
  spec.pipeline = p;
  spec.input = f.input;
  spec.generator = f.gen;
  spec.samples = f.samples;
  spec.seed = f.seed;
  spec.has_seed = true;
  spec.epsilon = f.epsilon;
  spec.scheme = ParsePartitionScheme(f.scheme);
  spec.inject_contraction = f.inject;
  spec.csv_out = f.csv;
  spec.json_out = f.out;
  spec.trace_out = f.trace;
  return spec;
}

PlaneGraph LoadGraph(const RunFlags& f) {
  if (!f.input.empty()) return PlaneGraphFromJson(ReadJsonFile(f.input));
  if (!f.gen.empty()) return PlaneGraphFromJson(Generate(ParseGeneratorSpec(f.gen), f.seed));
  Fail(ErrorCode::kBadParams, "either --input or --gen is required");
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteTextFile(path, text);
  }
}

int RunPipeline(Pipeline p, const RunFlags& f) {
  const ExperimentSpec spec = ToSpec(p, f);
  const RunReport report = RunExperiment(spec);
  WriteOutputs(spec, report);
  std::cout << ToJson(report)["summary"].dump() << "\n";
  std::fprintf(stderr, "%s %s done in %.3f s (config %s)\n", report.pipeline.c_str(), report.instance.c_str(),
               report.seconds, report.config_hash.c_str());
  return 0;
}

void PrintReport(const nlohmann::json& r) {
  std::cout << r.value("pipeline", "?") << " " << r.value("instance", "?") << " gamma=" << r.value("gamma", 0)
            << " config=" << r.value("config_hash", "?");
  const auto& s = r.at("summary");
  for (const char* key : {"max_pair_stretch", "gap", "beta", "lambda", "sparsity", "mcf"}) {
    if (s.contains(key)) std::cout << " " << key << "=" << s.at(key).dump();
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-cut gaps and random tree embeddings of plane graphs"};
  app.require_subcommand(1);
  RunFlags f;
  std::vector<std::string> reports;

  auto* gen = app.add_subcommand("gen", "Write a generated instance as JSON");
  gen->add_option("kind", f.gen, "grid:M, grid:RxC, cycle:N, path:N, star-paths:AxL, random-os:N, random-poly:N")
      ->required();
  AddSeed(gen, f);
  gen->add_option("--out,-o", f.out, "Output path (default stdout)");

  auto* validate = app.add_subcommand("validate", "Check rotation, lengths, terminals and Euler's formula");
  AddSource(validate, f);
  validate->add_option("--seed,-s", f.seed, "Seed for generated inputs");

  auto* faces = app.add_subcommand("faces", "Trace faces and compute the terminal face cover");
  AddSource(faces, f);
  faces->add_option("--seed,-s", f.seed, "Seed for generated inputs");
  faces->add_option("--out,-o", f.out, "JSON output path (default stdout)");

  auto* embed = app.add_subcommand("embed", "Sample terminal tree embeddings and measure stretch");
  AddSource(embed, f);
  AddSeed(embed, f);
  embed->add_option("--samples,-n", f.samples, "Number of tree samples")->check(CLI::Range(2L, 100000000L));
  embed->add_option("--scheme", f.scheme, "Partition scheme: planar or ckr");
  embed->add_option("--trace", f.trace, "Write the surgery trace JSON here");
  embed->add_flag("--inject-contraction", f.inject, "Halve every sampled tree edge (fault injection)");
  AddOutputs(embed, f);

  auto* partition = app.add_subcommand("partition", "Estimate the padding parameter of a partition scheme");
  AddSource(partition, f);
  AddSeed(partition, f);
  partition->add_option("--samples,-n", f.samples, "Partitions per scale")->check(CLI::Range(2L, 100000000L));
  partition->add_option("--scheme", f.scheme, "Partition scheme: planar or ckr");
  AddOutputs(partition, f);

  auto* gap = app.add_subcommand("gap", "Concurrent flow, sparsest cut and their ratio");
  AddSource(gap, f);
  AddSeed(gap, f);
  gap->add_option("--epsilon,-e", f.epsilon, "Flow accuracy in (0, 0.5)");
  AddOutputs(gap, f);

  auto* polygap = app.add_subcommand("polygap", "Polymatroid flow LP and sparsest edge set");
  AddSource(polygap, f);
  AddSeed(polygap, f);
  AddOutputs(polygap, f);

  auto* report = app.add_subcommand("report", "Summarise JSON reports written by the other commands");
  report->add_option("reports", reports, "Report files")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      Emit(f.out, Generate(ParseGeneratorSpec(f.gen), f.seed).dump(2) + "\n");
      return 0;
    }
    if (validate->parsed()) {
      const PlaneGraph g = LoadGraph(f);
      const ValidationReport r = Validate(g);
      std::cout << (r.ok ? "ok" : "invalid") << " vertices=" << g.num_vertices() << " edges=" << g.num_edges()
                << " faces=" << r.num_faces << " components=" << r.num_components << "\n";
      for (const Violation& v : r.violations) std::cout << ToString(v.code) << ": " << v.message << "\n";
      return r.ok ? 0 : 1;
    }
    if (faces->parsed()) {
      const PlaneGraph g = LoadGraph(f);
      RequireValid(g);
      const FaceSet fs = TraceFaces(g);
      const FaceCover cover = ComputeFaceCover(fs, g.terminals(), g.num_vertices());
      nlohmann::json doc = {{"num_faces", fs.faces.size()}, {"gamma", cover.gamma}, {"exact", cover.exact}};
      nlohmann::json list = nlohmann::json::array();
      for (const Face& face : fs.faces) {
        std::vector<std::int64_t> walk;
        for (VertexId v : face.walk) walk.push_back(g.label(v));
        list.push_back(walk);
      }
      doc["faces"] = std::move(list);
      doc["cover"] = cover.faces;
      Emit(f.out, doc.dump(2) + "\n");
      return 0;
    }
    if (embed->parsed()) return RunPipeline(Pipeline::kEmbed, f);
    if (partition->parsed()) return RunPipeline(Pipeline::kPartition, f);
    if (gap->parsed()) return RunPipeline(Pipeline::kGap, f);
    if (polygap->parsed()) return RunPipeline(Pipeline::kPolygap, f);
    if (report->parsed()) {
      for (const std::string& path : reports) PrintReport(ReadJsonFile(path));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
