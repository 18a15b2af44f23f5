#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decpauli/distribution.hpp"
#include "decpauli/subspace.hpp"

namespace decpauli {

/// Turns the measured NEC distribution into the relative assignment column:
/// a[d] = b[d XOR k], where k is the NEC's ideal outcome.
AssignmentColumn relabel_column(const SparseDistribution& b, uint64_t k);

struct DeconvolveResult {
  std::vector<double> x;      // quasi values, may be negative
  uint64_t zeroed_bins = 0;   // spectral bins pseudo-inverted to zero
};

/// XOR deconvolution via the Walsh spectrum: x = IFWHT(FWHT(z) ./ FWHT(a)),
/// with quotients forced to zero where |FWHT(a)[u]| <= eps * FWHT(a)[0]
/// (the pseudo-inverse convention). Inputs must share a power-of-two length.
DeconvolveResult deconvolve(std::span<const double> z, std::span<const double> a,
                            double eps = 1e-12);

/// Euclidean projection onto the probability simplex by descending sort and
/// threshold shift; idempotent, output sums to 1.
std::vector<double> project_to_simplex(std::span<const double> v);

/// Squared Bhattacharyya coefficient (sum_i sqrt(p_i q_i))^2. Both arguments
/// must be strict distributions on the same qubit count.
double fidelity(const SparseDistribution& p, const SparseDistribution& q);

struct CorrectionDiagnostics {
  uint32_t t = 0;                // reduced dimension
  double dropped_mass = 0.0;     // dropped_mass_z + dropped_mass_a
  double dropped_mass_z = 0.0;
  double dropped_mass_a = 0.0;
  uint64_t zeroed_bins = 0;
  double negative_mass = 0.0;    // total negative magnitude before projection
  double quasi_sum = 0.0;
};

struct CorrectionResult {
  SparseDistribution corrected;  // strict
  SparseDistribution quasi;      // signed, pre-projection
  CorrectionDiagnostics diagnostics;
};

/// Full correction pipeline: relabel the NEC distribution into a column,
/// compact both vectors onto a common GF(2) subspace, deconvolve, map back
/// to full bitstrings, and project to the nearest distribution.
CorrectionResult correct(const SparseDistribution& z, const SparseDistribution& b,
                         uint64_t k, uint32_t t_max = 15, double eps = 1e-12);

}  // namespace decpauli
