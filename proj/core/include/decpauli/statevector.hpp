#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "decpauli/circuit.hpp"
#include "decpauli/distribution.hpp"

namespace decpauli {

using cdouble = std::complex<double>;
using Mat2 = std::array<cdouble, 4>;  // row-major 2x2

/// Unitary matrix of a single-qubit gate kind.
Mat2 gate_matrix1(const GateOp& op);

/// Raw gate kernels over a dense amplitude array of length 2^n.
/// Shared by the statevector wrapper and the trajectory sampler.
namespace kernel {

void apply_matrix1(cdouble* amp, uint32_t n, uint32_t q, const Mat2& m);
void apply_rz(cdouble* amp, uint32_t n, uint32_t q, cdouble ph0, cdouble ph1);
void apply_x(cdouble* amp, uint32_t n, uint32_t q);
void apply_cz(cdouble* amp, uint32_t n, uint32_t a, uint32_t b);
void apply_cx(cdouble* amp, uint32_t n, uint32_t c, uint32_t t);
void apply_cp(cdouble* amp, uint32_t n, uint32_t a, uint32_t b, double lambda);

/// X^x Z^z up to a global phase.
void apply_pauli(cdouble* amp, uint32_t n, uint64_t x_mask, uint64_t z_mask);

/// Inverse-CDF draw for u in [0, 1) against |amp|^2.
uint64_t sample_outcome(const cdouble* amp, uint32_t n, double u);

}  // namespace kernel

/// Dense statevector over 2^n amplitudes; outcome index bit q is qubit q.
class Statevector {
 public:
  explicit Statevector(uint32_t n_qubits, uint64_t basis_state = 0);

  uint32_t n_qubits() const { return n_; }
  uint64_t dim() const { return uint64_t{1} << n_; }

  void apply(const GateOp& op);
  void apply_inverse(const GateOp& op);
  void apply_pauli(uint64_t x_mask, uint64_t z_mask);

  double norm_sq() const;
  double probability(uint64_t outcome) const;
  uint64_t sample(double u) const;

  SparseDistribution distribution(double cutoff = 1e-14) const;

  const std::vector<cdouble>& amplitudes() const { return amp_; }
  std::vector<cdouble>& amplitudes() { return amp_; }

 private:
  uint32_t n_;
  std::vector<cdouble> amp_;
};

/// Exact output distribution of the circuit from the ground state; accepts
/// any gate kinds, native or not. Entries below 1e-14 are dropped.
SparseDistribution simulate_noiseless(const Circuit& c, uint32_t qubit_cap = 20);

}  // namespace decpauli
