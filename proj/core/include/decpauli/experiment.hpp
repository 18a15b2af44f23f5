#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "decpauli/circuit.hpp"
#include "decpauli/correct.hpp"
#include "decpauli/distribution.hpp"
#include "decpauli/io.hpp"
#include "decpauli/lowering.hpp"
#include "decpauli/noise.hpp"

namespace decpauli {

/// Either a catalog family with parameters or a path to a circuit file.
struct CircuitSpec {
  std::string family;    // ghz | dicke_n1 | qpe | grover; empty when path set
  uint32_t n = 0;        // width for ghz / dicke_n1 / grover
  uint32_t m = 0;        // counting qubits for qpe
  double theta = 0.0;    // qpe phase as a fraction of 2*pi
  int iterations = -1;   // grover; -1 selects the optimal count
  std::string path;

  std::string label() const;
};

/// Pre-lowering circuit for the spec (catalog construction or file parse).
Circuit build_circuit(const CircuitSpec& spec);

struct ExperimentConfig {
  CircuitSpec circuit;
  NoiseModel noise;
  uint64_t shots = 200000;
  uint32_t n_rand = 16;   // twirled compilations per logical circuit
  uint32_t t_max = 15;    // truncation cap: arrays at most 2^t_max
  double eps = 1e-12;     // spectral zeroing threshold, relative to FWHT(a)[0]
  uint64_t seed = 0;
  bool shared_twirls = false;
  uint32_t shots_per_trajectory = 1;
  uint32_t threads = 0;   // 0 = hardware concurrency
  std::string out_dir;

  void validate() const;
};

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_file(const std::filesystem::path& path);

struct SamplingPass {
  std::string target;  // "payload" or "nec"
  uint64_t shots = 0;
  uint32_t instances = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::string name;
  Circuit payload;  // lowered, untwirled
  Circuit nec;
  uint64_t nec_ideal = 0;
  SparseDistribution ideal;
  SparseDistribution raw;
  SparseDistribution nec_dist;
  SparseDistribution quasi;
  SparseDistribution corrected;
  double fidelity_raw = 0.0;
  double fidelity_corrected = 0.0;
  CorrectionDiagnostics diagnostics;
  std::vector<TwirlRecord> payload_twirls;
  std::vector<TwirlRecord> nec_twirls;
  std::vector<SamplingPass> passes;
};

/// Builds, lowers, twirls, samples payload and NEC (the only two logical
/// circuits sampled), corrects, and scores. Persists into config.out_dir
/// when set. Bit-reproducible for a fixed config and seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// result.json + circuit files + counts + corrected distribution + CSV.
void write_result(const ExperimentResult& result, const std::filesystem::path& dir);

/// Reloads the report-relevant parts of a persisted result.
ExperimentResult read_result(const std::filesystem::path& result_json);

/// Raw-vs-corrected fidelity table over several experiments.
std::string fidelity_table(const std::vector<ExperimentResult>& results);

/// Histogram CSV with columns state,ideal,raw,corrected over the ideal
/// support (weights >= display_cutoff) plus a trailing "rest" row holding
/// the mass off the displayed support.
std::string histogram_csv(const ExperimentResult& result, double display_cutoff = 1e-4);

/// Counts-file ingestion for externally produced data.
SparseDistribution ingest_counts(const std::filesystem::path& path,
                                 CountsMetadata* meta_out = nullptr);

}  // namespace decpauli
