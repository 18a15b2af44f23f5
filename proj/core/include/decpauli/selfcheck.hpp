#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace decpauli::selfcheck {

/// O(4^t) Walsh transform by explicit matrix action; reference for fwht.
std::vector<double> naive_hadamard_transform(std::span<const double> v);

/// O(4^t) XOR (dyadic) convolution; reference for the spectral route.
std::vector<double> naive_xor_convolve(std::span<const double> a, std::span<const double> b);

/// Exact simplex projection by enumerating KKT support sets (2^len
/// candidates); reference for the sort-and-shift implementation, len <= 20.
std::vector<double> brute_force_simplex_projection(std::span<const double> v);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Assignment matrices of random Pauli channels (widths 1..4) are symmetric,
/// doubly stochastic, XOR-shift invariant, and recursively 2x2 block
/// circulant, all within 1e-12.
CheckResult check_assignment_structure(uint64_t seed, int channels_per_width = 30);

/// fwht against the naive transform (t <= 10, 1e-10), round-trip identity up
/// to 2^16 (1e-12), and the XOR convolution theorem (1e-10).
CheckResult check_fwht(uint64_t seed);

/// Sort-and-shift projection against the KKT oracle on short vectors
/// (1e-6), idempotence, and strictness of the output.
CheckResult check_projection(uint64_t seed);

/// Deconvolution recovers a random ideal distribution from z = A x built by
/// brute force (widths 1..6, 1e-9) whenever the spectrum is invertible.
CheckResult check_exact_recovery(uint64_t seed);

std::vector<CheckResult> run_all(uint64_t seed);

}  // namespace decpauli::selfcheck
