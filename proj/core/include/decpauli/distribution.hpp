#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace decpauli {

enum class DistKind : uint8_t { strict, quasi };

/// Sparse real-weighted vector over n-bit outcomes. Strict distributions are
/// nonnegative and sum to 1; quasi ones may carry negative weights.
struct SparseDistribution {
  uint32_t n_qubits = 0;
  DistKind kind = DistKind::strict;
  std::map<uint64_t, double> entries;

  double mass() const;
  double at(uint64_t outcome) const;

  /// Heaviest outcome; ties resolve to the smallest index.
  uint64_t argmax() const;

  /// Checks the kind invariants: mass within tol of 1, and no negative
  /// weights for strict distributions.
  void validate(double tol = 1e-9) const;
};

/// One column of the assignment matrix, indexed by displacement (the XOR of
/// observed and ideal outcome). A distribution over error displacements.
struct AssignmentColumn {
  uint32_t n_qubits = 0;
  std::map<uint64_t, double> entries;

  double mass() const;
  double at(uint64_t displacement) const;
};

/// Outcome index <-> text. Bitstrings are written MSB first, so the leftmost
/// character is the highest qubit index.
std::string to_bitstring(uint64_t outcome, uint32_t n_qubits);
uint64_t from_bitstring(std::string_view bits);

}  // namespace decpauli
