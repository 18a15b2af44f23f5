#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "decpauli/distribution.hpp"

namespace decpauli {

/// Bijection between a GF(2) displacement subspace and compact 2^t indices.
/// An outcome b is retained iff b XOR reference lies in span(basis); its
/// compact index is the coordinate vector in that basis, so XOR on outcomes
/// maps to XOR on compact indices.
struct ReducedIndexMap {
  uint32_t n_qubits = 0;
  uint64_t reference = 0;            // z0, the payload argmax
  std::vector<uint64_t> basis;       // reduced echelon form
  std::vector<uint32_t> pivots;      // pivot bit of each basis vector

  uint32_t t() const { return static_cast<uint32_t>(basis.size()); }
  uint64_t size() const { return uint64_t{1} << t(); }

  /// Compact coordinates of a displacement, or nullopt if outside the span.
  std::optional<uint64_t> coord(uint64_t displacement) const;

  /// Displacement vector of a compact index.
  uint64_t displacement(uint64_t compact) const;

  /// Full outcome bitstring of a compact index (reference XOR displacement).
  uint64_t outcome(uint64_t compact) const { return reference ^ displacement(compact); }
};

struct CompactResult {
  ReducedIndexMap map;
  std::vector<double> z;  // dense, length 2^t
  std::vector<double> a;
  double dropped_mass_z = 0.0;
  double dropped_mass_a = 0.0;
};

/// Aligns the payload distribution and the assignment column on a common
/// GF(2) subspace: reference = argmax z, span built from the supports by
/// Gaussian elimination over bit-vectors. If the span dimension exceeds
/// t_max, support elements are dropped lowest-weight-first until it fits;
/// any mass whose displacement still lies in the final span is kept.
CompactResult compact_subspace(const SparseDistribution& z, const AssignmentColumn& a,
                               uint32_t t_max = 15);

}  // namespace decpauli
