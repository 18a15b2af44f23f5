// dec: distribution error correction for Pauli-noisy circuits.
//
// Subcommands cover the full pipeline: build catalog circuits, lower to the
// native gate set, twirl, derive noise estimation circuits, simulate under
// depolarizing noise, correct measured distributions, and report fidelities.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decpauli/catalog.hpp"
#include "decpauli/circuit.hpp"
#include "decpauli/correct.hpp"
#include "decpauli/experiment.hpp"
#include "decpauli/io.hpp"
#include "decpauli/lowering.hpp"
#include "decpauli/noise.hpp"
#include "decpauli/selfcheck.hpp"
#include "decpauli/statevector.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace decpauli;

uint64_t seed_or_env(const std::optional<uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DEC_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

double parse_theta_text(const std::string& text) {
  const size_t slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  const double den = std::stod(text.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("theta fraction has zero denominator");
  return std::stod(text.substr(0, slash)) / den;
}

Circuit load_circuit(const std::string& path) {
  Circuit c = parse_circuit(read_text_file(path));
  c.name = std::filesystem::path(path).stem().string();
  return c;
}

json dist_json(const SparseDistribution& dist) {
  json j = json::object();
  for (const auto& [outcome, weight] : dist.entries) {
    j[to_bitstring(outcome, dist.n_qubits)] = weight;
  }
  return j;
}

struct TwirlArgs {
  std::string circuit;
  std::optional<uint64_t> seed;
  std::string out;
  std::string record_path;
};

struct SimulateArgs {
  std::string circuit;
  uint64_t shots = 200000;
  NoiseModel noise;
  std::optional<uint64_t> seed;
  bool exact = false;
  bool ideal = false;
  uint32_t shots_per_trajectory = 1;
  uint32_t threads = 0;
  std::string out;
};

struct CorrectArgs {
  std::string payload;
  std::string nec_counts;
  std::string k_bits;
  std::string nec_circuit;
  std::string ideal_path;
  uint32_t t_max = 15;
  double eps = 1e-12;
  std::string out;
};

json correction_json(const CorrectionResult& correction, std::optional<double> f_raw,
                     std::optional<double> f_cor) {
  json out;
  out["corrected"] = dist_json(correction.corrected);
  out["quasi"] = dist_json(correction.quasi);
  json diag;
  diag["t"] = correction.diagnostics.t;
  diag["dropped_mass"] = correction.diagnostics.dropped_mass;
  diag["dropped_mass_z"] = correction.diagnostics.dropped_mass_z;
  diag["dropped_mass_a"] = correction.diagnostics.dropped_mass_a;
  diag["zeroed_bins"] = correction.diagnostics.zeroed_bins;
  diag["negative_mass"] = correction.diagnostics.negative_mass;
  diag["quasi_sum"] = correction.diagnostics.quasi_sum;
  if (f_raw) diag["fidelity_raw"] = *f_raw;
  if (f_cor) diag["fidelity_corrected"] = *f_cor;
  out["diagnostics"] = diag;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distribution error correction for Pauli-noisy circuits"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "emit a catalog circuit");
  CircuitSpec build_spec;
  std::string build_theta, build_out;
  build->add_option("--family", build_spec.family, "ghz | dicke_n1 | qpe | grover")->required();
  build->add_option("--n", build_spec.n, "qubit count (ghz, dicke_n1, grover)");
  build->add_option("--m", build_spec.m, "counting qubits (qpe)");
  build->add_option("--theta", build_theta, "qpe phase, e.g. 0.96875 or 31/32");
  build->add_option("--iterations", build_spec.iterations, "grover iterations (-1 = optimal)");
  build->add_option("--out", build_out, "circuit file to write")->required();

  // lower
  auto* lower = app.add_subcommand("lower", "transpile to the native set {cz, sx, rz, x}");
  std::string lower_in, lower_out;
  lower->add_option("circuit", lower_in, "input circuit file")->required();
  lower->add_option("--out", lower_out, "output circuit file")->required();

  // twirl
  auto* twirl = app.add_subcommand("twirl", "randomized compiling of every CZ");
  TwirlArgs twirl_args;
  twirl->add_option("circuit", twirl_args.circuit, "native circuit file")->required();
  twirl->add_option("--seed", twirl_args.seed, "twirl seed (DEC_SEED fallback)");
  twirl->add_option("--out", twirl_args.out, "twirled circuit file")->required();
  twirl->add_option("--record", twirl_args.record_path, "twirl record JSON to write");

  // nec
  auto* nec_cmd = app.add_subcommand("nec", "derive the noise estimation circuit");
  std::string nec_in, nec_out;
  nec_cmd->add_option("circuit", nec_in, "native payload circuit file")->required();
  nec_cmd->add_option("--out", nec_out, "NEC circuit file")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "sample or exactly evolve a circuit");
  SimulateArgs sim_args;
  simulate->add_option("circuit", sim_args.circuit, "circuit file")->required();
  simulate->add_option("--shots", sim_args.shots, "shots for trajectory sampling");
  simulate->add_option("--p1", sim_args.noise.p1, "single-qubit depolarizing rate");
  simulate->add_option("--p2", sim_args.noise.p2, "two-qubit depolarizing rate");
  simulate->add_option("--p-meas", sim_args.noise.p_meas, "readout bit-flip rate");
  simulate->add_option("--seed", sim_args.seed, "sampling seed (DEC_SEED fallback)");
  simulate->add_flag("--exact", sim_args.exact, "exact density-matrix distribution (n <= 8)");
  simulate->add_flag("--ideal", sim_args.ideal, "noiseless statevector distribution");
  simulate->add_option("--shots-per-trajectory", sim_args.shots_per_trajectory,
                       "outcomes drawn per simulated trajectory");
  simulate->add_option("--threads", sim_args.threads, "worker threads (0 = auto)");
  simulate->add_option("--out", sim_args.out, "counts JSON to write")->required();

  // correct
  auto* correct_cmd = app.add_subcommand("correct", "correct a measured distribution");
  CorrectArgs cor_args;
  correct_cmd->add_option("--payload", cor_args.payload, "payload counts JSON")->required();
  correct_cmd->add_option("--nec", cor_args.nec_counts, "NEC counts JSON")->required();
  correct_cmd->add_option("--k", cor_args.k_bits, "NEC ideal outcome bitstring");
  correct_cmd->add_option("--nec-circuit", cor_args.nec_circuit,
                          "NEC circuit file to derive the ideal outcome from");
  correct_cmd->add_option("--ideal", cor_args.ideal_path,
                          "ideal distribution JSON for fidelity reporting");
  correct_cmd->add_option("--t-max", cor_args.t_max, "truncation cap (arrays at most 2^t_max)");
  correct_cmd->add_option("--eps", cor_args.eps, "spectral zeroing threshold");
  correct_cmd->add_option("--out", cor_args.out, "corrected JSON to write")->required();

  // fidelity
  auto* fid = app.add_subcommand("fidelity", "distribution fidelity between two counts files");
  std::string fid_a, fid_b;
  fid->add_option("first", fid_a)->required();
  fid->add_option("second", fid_b)->required();

  // run
  auto* run = app.add_subcommand("run", "full experiment: payload + NEC + correction");
  std::string run_config, run_theta;
  ExperimentConfig run_cfg;
  std::optional<uint64_t> run_seed;
  run->add_option("--config", run_config, "experiment config JSON");
  run->add_option("--family", run_cfg.circuit.family, "catalog family");
  run->add_option("--circuit", run_cfg.circuit.path, "circuit file instead of a family");
  run->add_option("--n", run_cfg.circuit.n, "qubit count");
  run->add_option("--m", run_cfg.circuit.m, "qpe counting qubits");
  run->add_option("--theta", run_theta, "qpe phase, e.g. 31/32");
  run->add_option("--iterations", run_cfg.circuit.iterations, "grover iterations");
  run->add_option("--shots", run_cfg.shots, "shots per logical circuit");
  run->add_option("--p1", run_cfg.noise.p1, "single-qubit depolarizing rate");
  run->add_option("--p2", run_cfg.noise.p2, "two-qubit depolarizing rate");
  run->add_option("--p-meas", run_cfg.noise.p_meas, "readout bit-flip rate");
  run->add_option("--n-rand", run_cfg.n_rand, "twirled compilations per circuit");
  run->add_option("--t-max", run_cfg.t_max, "truncation cap");
  run->add_option("--eps", run_cfg.eps, "spectral zeroing threshold");
  run->add_option("--seed", run_seed, "master seed (DEC_SEED fallback)");
  run->add_flag("--shared-twirls", run_cfg.shared_twirls,
                "reuse the payload twirls for the NEC");
  run->add_option("--shots-per-trajectory", run_cfg.shots_per_trajectory,
                  "outcomes drawn per simulated trajectory");
  run->add_option("--threads", run_cfg.threads, "worker threads (0 = auto)");
  run->add_option("--out", run_cfg.out_dir, "result directory");

  // report
  auto* report = app.add_subcommand("report", "fidelity table + histogram CSVs");
  std::vector<std::string> report_inputs;
  std::string report_out;
  report->add_option("results", report_inputs, "result.json files")->required();
  report->add_option("--out", report_out, "directory for per-experiment CSVs");

  // validate
  auto* validate = app.add_subcommand("validate", "run the structural property suites");
  std::optional<uint64_t> validate_seed;
  validate->add_option("--seed", validate_seed, "suite seed (DEC_SEED fallback)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      if (!build_theta.empty()) build_spec.theta = parse_theta_text(build_theta);
      const Circuit c = build_circuit(build_spec);
      write_text_file(build_out, serialize_circuit(c) + "\n");
      std::cout << c.name << ": " << c.n_qubits << " qubits, " << c.ops.size() << " ops -> "
                << build_out << "\n";
    } else if (*lower) {
      const Circuit lowered = lower_to_native(load_circuit(lower_in));
      write_text_file(lower_out, serialize_circuit(lowered) + "\n");
      std::cout << "lowered to " << lowered.ops.size() << " native ops -> " << lower_out
                << "\n";
    } else if (*twirl) {
      const uint64_t seed = seed_or_env(twirl_args.seed);
      const auto [twirled, record] = pauli_twirl(load_circuit(twirl_args.circuit), seed);
      write_text_file(twirl_args.out, serialize_circuit(twirled) + "\n");
      if (!twirl_args.record_path.empty()) {
        json sites = json::array();
        for (const TwirlSite& site : record.sites) {
          sites.push_back({{"op", site.op_index},
                           {"qubits", {site.qubit_a, site.qubit_b}},
                           {"pre", site.pre_label()},
                           {"post", site.post_label()}});
        }
        const json doc = {{"seed", record.seed}, {"sites", sites}};
        write_text_file(twirl_args.record_path, doc.dump(2) + "\n");
      }
      std::cout << record.sites.size() << " CZ sites twirled (seed " << seed << ") -> "
                << twirl_args.out << "\n";
    } else if (*nec_cmd) {
      const Circuit payload = load_circuit(nec_in);
      const Circuit nec = build_nec(payload);
      write_text_file(nec_out, serialize_circuit(nec) + "\n");
      std::cout << "ideal outcome " << to_bitstring(nec_ideal_output(nec), nec.n_qubits)
                << " -> " << nec_out << "\n";
    } else if (*simulate) {
      if (sim_args.exact && sim_args.ideal) {
        throw std::invalid_argument("--exact and --ideal are mutually exclusive");
      }
      const Circuit c = load_circuit(sim_args.circuit);
      CountsMetadata meta;
      meta.n_qubits = c.n_qubits;
      if (sim_args.ideal) {
        write_probabilities_json(sim_args.out, simulate_noiseless(c), meta);
      } else if (sim_args.exact) {
        meta.noise = sim_args.noise;
        write_probabilities_json(sim_args.out, exact_noisy_distribution(c, sim_args.noise),
                                 meta);
      } else {
        const uint64_t seed = seed_or_env(sim_args.seed);
        SampleOptions opts;
        opts.shots_per_trajectory = sim_args.shots_per_trajectory;
        opts.threads = sim_args.threads;
        meta.shots = sim_args.shots;
        meta.seed = seed;
        meta.noise = sim_args.noise;
        const auto counts =
            sample_noisy_counts(c, sim_args.noise, sim_args.shots, seed, opts);
        write_counts_json(sim_args.out, counts, c.n_qubits, meta);
      }
      std::cout << "wrote " << sim_args.out << "\n";
    } else if (*correct_cmd) {
      const SparseDistribution z = read_counts_json(cor_args.payload);
      const SparseDistribution b = read_counts_json(cor_args.nec_counts);
      uint64_t k = 0;
      if (!cor_args.k_bits.empty()) {
        k = from_bitstring(cor_args.k_bits);
      } else if (!cor_args.nec_circuit.empty()) {
        k = nec_ideal_output(load_circuit(cor_args.nec_circuit));
      } else {
        throw std::invalid_argument("correct needs --k or --nec-circuit");
      }
      const CorrectionResult correction = correct(z, b, k, cor_args.t_max, cor_args.eps);
      std::optional<double> f_raw, f_cor;
      if (!cor_args.ideal_path.empty()) {
        const SparseDistribution ideal = read_counts_json(cor_args.ideal_path);
        f_raw = fidelity(z, ideal);
        f_cor = fidelity(correction.corrected, ideal);
      }
      write_text_file(cor_args.out, correction_json(correction, f_raw, f_cor).dump(2) + "\n");
      std::cout << "t=" << correction.diagnostics.t
                << " dropped_mass=" << correction.diagnostics.dropped_mass
                << " zeroed_bins=" << correction.diagnostics.zeroed_bins
                << " negative_mass=" << correction.diagnostics.negative_mass << "\n";
      if (f_raw) {
        std::cout << "fidelity raw=" << *f_raw << " corrected=" << *f_cor << "\n";
      }
      std::cout << "wrote " << cor_args.out << "\n";
    } else if (*fid) {
      const SparseDistribution a = read_counts_json(fid_a);
      const SparseDistribution b = read_counts_json(fid_b);
      std::cout << fidelity(a, b) << "\n";
    } else if (*run) {
      ExperimentConfig cfg;
      if (!run_config.empty()) cfg = config_from_file(run_config);
      const auto given = [&](const std::string& name) { return run->count(name) > 0; };
      if (given("--family")) cfg.circuit = run_cfg.circuit;
      if (given("--circuit")) {
        cfg.circuit = CircuitSpec{};
        cfg.circuit.path = run_cfg.circuit.path;
      }
      if (given("--n")) cfg.circuit.n = run_cfg.circuit.n;
      if (given("--m")) cfg.circuit.m = run_cfg.circuit.m;
      if (given("--theta")) cfg.circuit.theta = parse_theta_text(run_theta);
      if (given("--iterations")) cfg.circuit.iterations = run_cfg.circuit.iterations;
      if (given("--shots")) cfg.shots = run_cfg.shots;
      if (given("--p1")) cfg.noise.p1 = run_cfg.noise.p1;
      if (given("--p2")) cfg.noise.p2 = run_cfg.noise.p2;
      if (given("--p-meas")) cfg.noise.p_meas = run_cfg.noise.p_meas;
      if (given("--n-rand")) cfg.n_rand = run_cfg.n_rand;
      if (given("--t-max")) cfg.t_max = run_cfg.t_max;
      if (given("--eps")) cfg.eps = run_cfg.eps;
      if (given("--shared-twirls")) cfg.shared_twirls = run_cfg.shared_twirls;
      if (given("--shots-per-trajectory")) {
        cfg.shots_per_trajectory = run_cfg.shots_per_trajectory;
      }
      if (given("--threads")) cfg.threads = run_cfg.threads;
      if (given("--out")) cfg.out_dir = run_cfg.out_dir;
      if (run_seed || run_config.empty()) cfg.seed = seed_or_env(run_seed);

      const ExperimentResult result = run_experiment(cfg);
      std::cout << result.name << ": raw fidelity " << result.fidelity_raw
                << ", corrected " << result.fidelity_corrected << " (t="
                << result.diagnostics.t << ", dropped "
                << result.diagnostics.dropped_mass << ")\n";
      if (!cfg.out_dir.empty()) std::cout << "results in " << cfg.out_dir << "\n";
    } else if (*report) {
      std::vector<ExperimentResult> results;
      results.reserve(report_inputs.size());
      for (const std::string& path : report_inputs) results.push_back(read_result(path));
      std::cout << fidelity_table(results);
      if (!report_out.empty()) {
        for (const ExperimentResult& r : results) {
          const auto csv = std::filesystem::path(report_out) / (r.name + ".csv");
          write_text_file(csv, histogram_csv(r));
          std::cout << "wrote " << csv.string() << "\n";
        }
      }
    } else if (*validate) {
      const uint64_t seed = seed_or_env(validate_seed);
      int failures = 0;
      for (const auto& check : selfcheck::run_all(seed)) {
        std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name << ": "
                  << check.detail << "\n";
        if (!check.pass) ++failures;
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
