#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "planegap/partitions.hpp"

namespace planegap {

// "grid:M", "grid:RxC", "cycle:N", "path:N", "star-paths:AxL",
// "random-os:N", "random-poly:N".
struct GeneratorSpec {
  std::string kind;
  std::vector<int> params;

  std::string ToString() const;
};

GeneratorSpec ParseGeneratorSpec(const std::string& text);

// Graph JSON for the deterministic families; network JSON (flow network for
// random-os, polymatroid network for random-poly) for the random ones.
// Grids, cycles, paths and star paths get unit lengths and capacities. BAD_PARAMS on
// sizes below 1 or unknown kinds.
nlohmann::json Generate(const GeneratorSpec& spec, std::uint64_t seed);

enum class Pipeline { kEmbed, kGap, kPolygap, kPartition };

std::string ToString(Pipeline pipeline);
Pipeline ParsePipeline(const std::string& name);

struct ExperimentSpec {
  Pipeline pipeline = Pipeline::kEmbed;
  std::string input;         // JSON file; empty means use the generator
  std::string generator;     // GeneratorSpec text
  long samples = 200;
  std::uint64_t seed = 0;
  bool has_seed = false;     // a seed is mandatory
  double epsilon = 0.02;
  PartitionScheme scheme = PartitionScheme::kPlanar;
  bool inject_contraction = false;  // halve every sampled tree edge
  std::string csv_out;
  std::string json_out;
  std::string trace_out;
};

// FNV-1a over the canonical JSON of the spec, as 16 hex digits.
std::string ConfigHash(const ExperimentSpec& spec);
nlohmann::json ToJson(const ExperimentSpec& spec);

struct StretchRow {
  std::string instance;
  std::string pair;  // "u-v" with input labels
  double d_g = 0;
  double mean_dt = 0;
  double stretch = 0;
  long samples = 0;
  double ci_lo = 0;  // interval of the stretch
  double ci_hi = 0;
};

struct RunReport {
  std::string instance;
  std::string pipeline;
  std::string config_hash;
  int gamma = 0;
  std::vector<StretchRow> rows;
  std::vector<double> gaps;
  nlohmann::json summary = nlohmann::json::object();
  nlohmann::json trace;       // surgery trace of the embed pipeline, if any
  double seconds = 0;         // wall time; never written to report files
};

// Runs the pipeline. Module errors are rethrown with the stage name
// prefixed to the message and the original code kept; a fired invariant
// raises INVARIANT_VIOLATION or DOMINATION_VIOLATION.
RunReport RunExperiment(const ExperimentSpec& spec);

// Fixed columns instance,pair,d_G,mean_dT,stretch,samples,ci_lo,ci_hi.
// Rows are validated first (finite values, stretch >= 1 - 1e-9 and
// ci_lo <= stretch <= ci_hi); INVARIANT_VIOLATION otherwise.
std::string ToCsv(const RunReport& report);
nlohmann::json ToJson(const RunReport& report);

// Writes the CSV and JSON outputs named in the spec.
void WriteOutputs(const ExperimentSpec& spec, const RunReport& report);

}  // namespace planegap
