#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "decpauli/circuit.hpp"
#include "decpauli/distribution.hpp"
#include "decpauli/pauli.hpp"
#include "decpauli/statevector.hpp"

namespace decpauli {

/// Depolarizing rates applied after every gate (p1 for single-qubit gates,
/// p2 for CZ) plus an optional per-qubit readout bit-flip probability.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double p_meas = 0.0;

  void validate() const;
  bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && p_meas == 0.0; }
};

/// rho -> sum_i chi_i P_i rho P_i with chi_i >= 0 summing to 1.
struct PauliChannel {
  uint32_t n_qubits = 0;
  std::vector<std::pair<PauliString, double>> terms;

  void validate(double tol = 1e-12) const;
};

/// Seeded channel with distinct Pauli strings and Dirichlet(1) weights.
PauliChannel random_pauli_channel(uint32_t n, size_t n_terms, uint64_t seed);

/// The channel's action on a standard-basis distribution: each term moves
/// mass by XOR with its X-mask.
SparseDistribution apply_pauli_channel(const PauliChannel& ch, const SparseDistribution& x);

struct SampleOptions {
  uint32_t shots_per_trajectory = 1;
  uint32_t threads = 0;  // 0 = hardware concurrency
  uint32_t qubit_cap = 20;
  size_t prefix_cache_limit = size_t{256} << 20;  // bytes
};

/// Monte Carlo trajectory sampling: per trajectory, each gate is followed by
/// a uniformly random non-identity Pauli on its qubit(s) with probability
/// p1 (p2 for CZ); the statevector is simulated once per trajectory and
/// shots_per_trajectory outcomes are drawn, with readout flips applied at
/// p_meas. Bit-reproducible for a fixed seed regardless of threading.
SparseDistribution sample_noisy(const Circuit& c, const NoiseModel& nm, uint64_t shots,
                                uint64_t seed, const SampleOptions& opts = {});

/// Same sampling process, returning raw outcome counts.
std::map<uint64_t, uint64_t> sample_noisy_counts(const Circuit& c, const NoiseModel& nm,
                                                 uint64_t shots, uint64_t seed,
                                                 const SampleOptions& opts = {});

/// Exact diagonal of the output density matrix under the same noise
/// placement as sample_noisy.
SparseDistribution exact_noisy_distribution(const Circuit& c, const NoiseModel& nm,
                                            uint32_t qubit_cap = 8);

/// Exact relative column of the assignment matrix: the circuit is driven so
/// its ideal output is exactly |k> (by preparing U^dag |k>), evolved under
/// the exact noise, and the output distribution is relabeled by XOR with k.
AssignmentColumn exact_column_oracle(const Circuit& c, const NoiseModel& nm, uint64_t k,
                                     uint32_t qubit_cap = 8);

struct DenseMatrix {
  uint64_t dim = 0;
  std::vector<double> data;  // row-major

  double& at(uint64_t r, uint64_t c) { return data[r * dim + c]; }
  double at(uint64_t r, uint64_t c) const { return data[r * dim + c]; }
};

/// Full 2^n x 2^n assignment matrix of a Pauli channel by enumerating each
/// term's action on every basis state. Oracle-grade, n <= 6 by default.
DenseMatrix brute_force_assignment(const PauliChannel& ch, uint32_t qubit_cap = 6);

/// Dense density matrix (4^n complex entries) for exact noisy evolution.
class DensityMatrix {
 public:
  explicit DensityMatrix(uint32_t n_qubits);
  static DensityMatrix from_pure(const Statevector& psi);

  uint32_t n_qubits() const { return n_; }
  uint64_t dim() const { return uint64_t{1} << n_; }

  void apply(const GateOp& op);
  void apply_depolarizing1(uint32_t q, double p);
  void apply_depolarizing2(uint32_t a, uint32_t b, double p);

  double trace() const;
  std::vector<double> diagonal() const;
  const std::vector<cdouble>& data() const { return rho_; }

 private:
  void apply_matrix1(uint32_t q, const Mat2& m);
  void apply_cz(uint32_t a, uint32_t b);

  uint32_t n_;
  std::vector<cdouble> rho_;  // row-major
};

/// Independent classical bit-flip with probability p on every qubit of a
/// diagonal distribution.
std::vector<double> apply_readout_flips(std::vector<double> diag, uint32_t n, double p);

}  // namespace decpauli
