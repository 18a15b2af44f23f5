#include "decpauli/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "decpauli/catalog.hpp"
#include "decpauli/rng.hpp"
#include "decpauli/statevector.hpp"

namespace decpauli {

using json = nlohmann::ordered_json;

namespace {

// Stream offsets for per-instance seed derivation.
constexpr uint64_t kPayloadTwirlStream = 0x100000;
constexpr uint64_t kPayloadSampleStream = 0x200000;
constexpr uint64_t kNecTwirlStream = 0x300000;
constexpr uint64_t kNecSampleStream = 0x400000;

}  // namespace

std::string CircuitSpec::label() const {
  if (!path.empty()) return std::filesystem::path(path).stem().string();
  if (family == "ghz") return "ghz" + std::to_string(n);
  if (family == "dicke_n1") return "dicke" + std::to_string(n) + "_1";
  if (family == "qpe") return "qpe" + std::to_string(m + 1);
  if (family == "grover") return "grover" + std::to_string(n);
  return family;
}

Circuit build_circuit(const CircuitSpec& spec) {
  if (!spec.path.empty()) {
    Circuit c = parse_circuit(read_text_file(spec.path));
    c.name = spec.label();
    return c;
  }
  if (spec.family == "ghz") return make_ghz(spec.n);
  if (spec.family == "dicke_n1") return make_dicke_one_excitation(spec.n);
  if (spec.family == "qpe") return make_qpe(spec.m, spec.theta);
  if (spec.family == "grover") return make_grover_all_ones(spec.n, spec.iterations);
  throw std::invalid_argument("unknown circuit family '" + spec.family +
                              "' (expected ghz, dicke_n1, qpe, or grover)");
}

void ExperimentConfig::validate() const {
  if (circuit.family.empty() && circuit.path.empty()) {
    throw std::invalid_argument("config needs a circuit family or a circuit path");
  }
  noise.validate();
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (n_rand < 1) throw std::invalid_argument("n_rand must be >= 1");
  if (t_max < 1 || t_max > 20) throw std::invalid_argument("t_max must be in [1, 20]");
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
  if (shots_per_trajectory < 1) {
    throw std::invalid_argument("shots_per_trajectory must be >= 1");
  }
}

namespace {

json circuit_spec_to_json(const CircuitSpec& spec) {
  json j = json::object();
  if (!spec.path.empty()) {
    j["path"] = spec.path;
    return j;
  }
  j["family"] = spec.family;
  if (spec.family == "qpe") {
    j["m"] = spec.m;
    j["theta"] = spec.theta;
  } else {
    j["n"] = spec.n;
    if (spec.family == "grover") j["iterations"] = spec.iterations;
  }
  return j;
}

double parse_theta(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const size_t slash = s.find('/');
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("theta fraction has zero denominator");
      return num / den;
    }
    return std::stod(s);
  }
  throw std::invalid_argument("theta must be a number or a fraction string");
}

CircuitSpec circuit_spec_from_json(const json& j) {
  CircuitSpec spec;
  if (j.contains("path")) {
    spec.path = j.at("path").get<std::string>();
    return spec;
  }
  spec.family = j.at("family").get<std::string>();
  if (j.contains("n")) spec.n = j.at("n").get<uint32_t>();
  if (j.contains("m")) spec.m = j.at("m").get<uint32_t>();
  if (j.contains("theta")) spec.theta = parse_theta(j.at("theta"));
  if (j.contains("iterations")) spec.iterations = j.at("iterations").get<int>();
  return spec;
}

json config_to_json_obj(const ExperimentConfig& cfg) {
  json j;
  j["circuit"] = circuit_spec_to_json(cfg.circuit);
  j["noise"] = {{"p1", cfg.noise.p1}, {"p2", cfg.noise.p2}, {"p_meas", cfg.noise.p_meas}};
  j["shots"] = cfg.shots;
  j["n_rand"] = cfg.n_rand;
  j["t_max"] = cfg.t_max;
  j["eps"] = cfg.eps;
  j["seed"] = cfg.seed;
  j["shared_twirls"] = cfg.shared_twirls;
  j["shots_per_trajectory"] = cfg.shots_per_trajectory;
  j["threads"] = cfg.threads;
  j["out"] = cfg.out_dir;
  return j;
}

ExperimentConfig config_from_json_obj(const json& j) {
  ExperimentConfig cfg;
  cfg.circuit = circuit_spec_from_json(j.at("circuit"));
  if (j.contains("noise")) {
    const json& nj = j.at("noise");
    cfg.noise.p1 = nj.value("p1", 0.0);
    cfg.noise.p2 = nj.value("p2", 0.0);
    cfg.noise.p_meas = nj.value("p_meas", 0.0);
  }
  cfg.shots = j.value("shots", uint64_t{200000});
  cfg.n_rand = j.value("n_rand", uint32_t{16});
  cfg.t_max = j.value("t_max", uint32_t{15});
  cfg.eps = j.value("eps", 1e-12);
  cfg.seed = j.value("seed", uint64_t{0});
  cfg.shared_twirls = j.value("shared_twirls", false);
  cfg.shots_per_trajectory = j.value("shots_per_trajectory", uint32_t{1});
  cfg.threads = j.value("threads", uint32_t{0});
  cfg.out_dir = j.value("out", std::string{});
  return cfg;
}

json distribution_to_json(const SparseDistribution& dist) {
  json j = json::object();
  for (const auto& [outcome, weight] : dist.entries) {
    j[to_bitstring(outcome, dist.n_qubits)] = weight;
  }
  return j;
}

SparseDistribution distribution_from_json(const json& j, uint32_t n, DistKind kind) {
  SparseDistribution dist;
  dist.n_qubits = n;
  dist.kind = kind;
  for (const auto& [key, value] : j.items()) {
    dist.entries.emplace(from_bitstring(key), value.get<double>());
  }
  return dist;
}

json twirl_record_to_json(const TwirlRecord& record) {
  json sites = json::array();
  for (const TwirlSite& site : record.sites) {
    sites.push_back({{"op", site.op_index},
                     {"qubits", {site.qubit_a, site.qubit_b}},
                     {"pre", site.pre_label()},
                     {"post", site.post_label()}});
  }
  return {{"seed", record.seed}, {"sites", sites}};
}

json gate_counts_to_json(const Circuit& c) {
  json j = json::object();
  for (const auto& [kind, count] : gate_counts(c)) j[gate_name(kind)] = count;
  return j;
}

json diagnostics_to_json(const ExperimentResult& result) {
  json j;
  const CorrectionDiagnostics& d = result.diagnostics;
  j["t"] = d.t;
  j["dropped_mass"] = d.dropped_mass;
  j["dropped_mass_z"] = d.dropped_mass_z;
  j["dropped_mass_a"] = d.dropped_mass_a;
  j["zeroed_bins"] = d.zeroed_bins;
  j["negative_mass"] = d.negative_mass;
  j["quasi_sum"] = d.quasi_sum;
  j["fidelity_raw"] = result.fidelity_raw;
  j["fidelity_corrected"] = result.fidelity_corrected;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::map<uint64_t, uint64_t> to_counts(const SparseDistribution& dist, uint64_t shots) {
  std::map<uint64_t, uint64_t> counts;
  for (const auto& [outcome, weight] : dist.entries) {
    counts[outcome] = static_cast<uint64_t>(std::llround(weight * static_cast<double>(shots)));
  }
  return counts;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_to_json_obj(cfg).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  return config_from_json_obj(json::parse(text));
}

ExperimentConfig config_from_file(const std::filesystem::path& path) {
  return config_from_json(read_text_file(path));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  ExperimentResult result;
  result.config = cfg;
  result.name = cfg.circuit.label();

  const Circuit pre = build_circuit(cfg.circuit);
  result.payload = lower_to_native(pre);
  result.payload.name = result.name;
  result.nec = build_nec(result.payload);
  result.nec_ideal = nec_ideal_output(result.nec);
  result.ideal = simulate_noiseless(result.payload);

  SampleOptions opts;
  opts.shots_per_trajectory = cfg.shots_per_trajectory;
  opts.threads = cfg.threads;

  const auto sample_instances =
      [&](const Circuit& circuit, uint64_t twirl_stream, uint64_t sample_stream,
          const std::vector<TwirlRecord>* shared, std::vector<TwirlRecord>& records_out)
      -> SparseDistribution {
    std::map<uint64_t, uint64_t> counts;
    const uint64_t base = cfg.shots / cfg.n_rand;
    const uint64_t remainder = cfg.shots % cfg.n_rand;
    for (uint32_t i = 0; i < cfg.n_rand; ++i) {
      Circuit twirled;
      if (shared) {
        twirled = apply_twirl(circuit, (*shared)[i]);
        records_out.push_back((*shared)[i]);
      } else {
        auto [tc, record] = pauli_twirl(circuit, derive_seed(cfg.seed, twirl_stream + i));
        twirled = std::move(tc);
        records_out.push_back(std::move(record));
      }
      const uint64_t instance_shots = base + (i < remainder ? 1 : 0);
      if (instance_shots == 0) continue;
      const auto instance_counts = sample_noisy_counts(
          twirled, cfg.noise, instance_shots, derive_seed(cfg.seed, sample_stream + i), opts);
      for (const auto& [outcome, count] : instance_counts) counts[outcome] += count;
    }
    SparseDistribution dist;
    dist.n_qubits = circuit.n_qubits;
    dist.kind = DistKind::strict;
    const double inv = 1.0 / static_cast<double>(cfg.shots);
    for (const auto& [outcome, count] : counts) {
      dist.entries.emplace(outcome, static_cast<double>(count) * inv);
    }
    return dist;
  };

  result.raw = sample_instances(result.payload, kPayloadTwirlStream, kPayloadSampleStream,
                                nullptr, result.payload_twirls);
  result.nec_dist = sample_instances(result.nec, kNecTwirlStream, kNecSampleStream,
                                     cfg.shared_twirls ? &result.payload_twirls : nullptr,
                                     result.nec_twirls);
  result.passes = {{"payload", cfg.shots, cfg.n_rand}, {"nec", cfg.shots, cfg.n_rand}};

  const CorrectionResult correction =
      correct(result.raw, result.nec_dist, result.nec_ideal, cfg.t_max, cfg.eps);
  result.corrected = correction.corrected;
  result.quasi = correction.quasi;
  result.diagnostics = correction.diagnostics;
  result.fidelity_raw = fidelity(result.raw, result.ideal);
  result.fidelity_corrected = fidelity(result.corrected, result.ideal);

  if (!cfg.out_dir.empty()) write_result(result, cfg.out_dir);
  return result;
}

void write_result(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const ExperimentConfig& cfg = result.config;
  const uint32_t n = result.payload.n_qubits;

  json manifest;
  manifest["name"] = result.name;
  manifest["config"] = config_to_json_obj(cfg);
  manifest["n_qubits"] = n;
  manifest["nec_ideal_outcome"] = to_bitstring(result.nec_ideal, n);
  manifest["gate_counts"] = {{"payload", gate_counts_to_json(result.payload)},
                             {"nec", gate_counts_to_json(result.nec)}};
  json passes = json::array();
  for (const SamplingPass& pass : result.passes) {
    passes.push_back(
        {{"target", pass.target}, {"shots", pass.shots}, {"instances", pass.instances}});
  }
  manifest["sampling"] = {{"passes", passes}};
  json payload_twirls = json::array();
  for (const TwirlRecord& r : result.payload_twirls) payload_twirls.push_back(twirl_record_to_json(r));
  json nec_twirls = json::array();
  for (const TwirlRecord& r : result.nec_twirls) nec_twirls.push_back(twirl_record_to_json(r));
  manifest["twirls"] = {{"shared", cfg.shared_twirls},
                        {"payload", payload_twirls},
                        {"nec", nec_twirls}};
  manifest["distributions"] = {{"ideal", distribution_to_json(result.ideal)},
                               {"raw", distribution_to_json(result.raw)},
                               {"nec", distribution_to_json(result.nec_dist)},
                               {"quasi", distribution_to_json(result.quasi)},
                               {"corrected", distribution_to_json(result.corrected)}};
  manifest["fidelities"] = {{"raw", result.fidelity_raw},
                            {"corrected", result.fidelity_corrected}};
  manifest["diagnostics"] = diagnostics_to_json(result);
  manifest["timestamp"] = utc_timestamp();
  write_text_file(dir / "result.json", manifest.dump(2) + "\n");

  write_text_file(dir / "payload.circ", serialize_circuit(result.payload) + "\n");
  write_text_file(dir / "nec.circ", serialize_circuit(result.nec) + "\n");

  CountsMetadata meta;
  meta.n_qubits = n;
  meta.shots = cfg.shots;
  meta.seed = cfg.seed;
  meta.noise = cfg.noise;
  write_counts_json(dir / "raw_counts.json", to_counts(result.raw, cfg.shots), n, meta);
  write_counts_json(dir / "nec_counts.json", to_counts(result.nec_dist, cfg.shots), n, meta);

  json corrected;
  corrected["corrected"] = distribution_to_json(result.corrected);
  corrected["quasi"] = distribution_to_json(result.quasi);
  corrected["diagnostics"] = diagnostics_to_json(result);
  write_text_file(dir / "corrected.json", corrected.dump(2) + "\n");

  write_text_file(dir / "histogram.csv", histogram_csv(result));
}

ExperimentResult read_result(const std::filesystem::path& result_json) {
  const json manifest = json::parse(read_text_file(result_json));
  ExperimentResult result;
  result.name = manifest.at("name").get<std::string>();
  result.config = config_from_json_obj(manifest.at("config"));
  const uint32_t n = manifest.at("n_qubits").get<uint32_t>();
  result.nec_ideal = from_bitstring(manifest.at("nec_ideal_outcome").get<std::string>());
  const json& dists = manifest.at("distributions");
  result.ideal = distribution_from_json(dists.at("ideal"), n, DistKind::strict);
  result.raw = distribution_from_json(dists.at("raw"), n, DistKind::strict);
  result.nec_dist = distribution_from_json(dists.at("nec"), n, DistKind::strict);
  result.quasi = distribution_from_json(dists.at("quasi"), n, DistKind::quasi);
  result.corrected = distribution_from_json(dists.at("corrected"), n, DistKind::strict);
  result.fidelity_raw = manifest.at("fidelities").at("raw").get<double>();
  result.fidelity_corrected = manifest.at("fidelities").at("corrected").get<double>();
  const json& diag = manifest.at("diagnostics");
  result.diagnostics.t = diag.at("t").get<uint32_t>();
  result.diagnostics.dropped_mass = diag.at("dropped_mass").get<double>();
  result.diagnostics.dropped_mass_z = diag.at("dropped_mass_z").get<double>();
  result.diagnostics.dropped_mass_a = diag.at("dropped_mass_a").get<double>();
  result.diagnostics.zeroed_bins = diag.at("zeroed_bins").get<uint64_t>();
  result.diagnostics.negative_mass = diag.at("negative_mass").get<double>();
  result.diagnostics.quasi_sum = diag.at("quasi_sum").get<double>();
  for (const json& pass : manifest.at("sampling").at("passes")) {
    result.passes.push_back({pass.at("target").get<std::string>(),
                             pass.at("shots").get<uint64_t>(),
                             pass.at("instances").get<uint32_t>()});
  }
  return result;
}

std::string fidelity_table(const std::vector<ExperimentResult>& results) {
  if (results.empty()) throw std::invalid_argument("report needs at least one result");
  size_t width = 8;
  for (const ExperimentResult& r : results) width = std::max(width, r.name.size() + 2);

  std::ostringstream os;
  const auto cell = [&os, width](const std::string& text) {
    os << '|';
    for (size_t i = text.size(); i < width; ++i) os << ' ';
    os << text << ' ';
  };
  const auto fidelity_cell = [&](double value) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    cell(buf);
  };

  cell("");
  for (const ExperimentResult& r : results) cell(r.name);
  os << "|\n";
  cell("Cor.");
  for (const ExperimentResult& r : results) fidelity_cell(r.fidelity_corrected);
  os << "|\n";
  cell("Raw");
  for (const ExperimentResult& r : results) fidelity_cell(r.fidelity_raw);
  os << "|\n";
  return os.str();
}

std::string histogram_csv(const ExperimentResult& result, double display_cutoff) {
  std::ostringstream os;
  os << "state,ideal,raw,corrected\n";
  double ideal_rest = 1.0, raw_rest = 1.0, corrected_rest = 1.0;
  char buf[128];
  for (const auto& [outcome, ideal_w] : result.ideal.entries) {
    if (ideal_w < display_cutoff) continue;
    const double raw_w = result.raw.at(outcome);
    const double cor_w = result.corrected.at(outcome);
    std::snprintf(buf, sizeof(buf), "%llu,%.10g,%.10g,%.10g\n",
                  static_cast<unsigned long long>(outcome), ideal_w, raw_w, cor_w);
    os << buf;
    ideal_rest -= ideal_w;
    raw_rest -= raw_w;
    corrected_rest -= cor_w;
  }
  std::snprintf(buf, sizeof(buf), "rest,%.10g,%.10g,%.10g\n", std::max(ideal_rest, 0.0),
                std::max(raw_rest, 0.0), std::max(corrected_rest, 0.0));
  os << buf;
  return os.str();
}

SparseDistribution ingest_counts(const std::filesystem::path& path, CountsMetadata* meta_out) {
  return read_counts_json(path, meta_out);
}

}  // namespace decpauli
