#pragma once

#include <cstdint>
#include <string>

namespace decpauli {

/// n-qubit Pauli as an X-bit mask and a Z-bit mask; qubit q has an X (Z)
/// component iff bit q of x_mask (z_mask) is set. Y on q sets both.
/// The sign is tracked only while conjugating; the channels this library
/// deals in are insensitive to it.
struct PauliString {
  uint32_t n = 0;
  uint64_t x_mask = 0;
  uint64_t z_mask = 0;
  int sign = +1;

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }

  /// Throws std::invalid_argument if a mask has bits at or above n.
  void validate() const;

  /// Character per qubit, qubit 0 leftmost: e.g. "XIZ" is X on q0, Z on q2.
  std::string label() const;

  bool operator==(const PauliString&) const = default;
};

/// Single-qubit Pauli code: bit 0 = X component, bit 1 = Z component.
enum class Pauli1 : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli1_char(Pauli1 p);
PauliString pauli_from_pair(Pauli1 on_a, Pauli1 on_b, uint32_t a, uint32_t b, uint32_t n);

/// CZ P CZ with the sign discarded: X on one qubit of the pair picks up a Z
/// on the other, Z components pass through.
PauliString conjugate_by_cz(const PauliString& p, uint32_t a, uint32_t b);

}  // namespace decpauli
