#include "decpauli/pauli.hpp"

#include <stdexcept>

namespace decpauli {

void PauliString::validate() const {
  if (n == 0 || n > 64) throw std::invalid_argument("pauli width must be in [1, 64]");
  const uint64_t allowed = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
  if ((x_mask & ~allowed) != 0 || (z_mask & ~allowed) != 0) {
    throw std::invalid_argument("pauli mask has bits outside the qubit range");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("pauli sign must be +-1");
}

std::string PauliString::label() const {
  std::string s;
  s.reserve(n);
  for (uint32_t q = 0; q < n; ++q) {
    const bool x = (x_mask >> q) & 1;
    const bool z = (z_mask >> q) & 1;
    s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

char pauli1_char(Pauli1 p) {
  switch (p) {
    case Pauli1::I: return 'I';
    case Pauli1::X: return 'X';
    case Pauli1::Z: return 'Z';
    case Pauli1::Y: return 'Y';
  }
  return '?';
}

PauliString pauli_from_pair(Pauli1 on_a, Pauli1 on_b, uint32_t a, uint32_t b, uint32_t n) {
  PauliString p;
  p.n = n;
  const auto place = [&](Pauli1 single, uint32_t q) {
    const auto bits = static_cast<uint8_t>(single);
    if (bits & 1) p.x_mask |= uint64_t{1} << q;
    if (bits & 2) p.z_mask |= uint64_t{1} << q;
  };
  place(on_a, a);
  place(on_b, b);
  return p;
}

PauliString conjugate_by_cz(const PauliString& p, uint32_t a, uint32_t b) {
  PauliString out = p;
  const uint64_t bit_a = uint64_t{1} << a;
  const uint64_t bit_b = uint64_t{1} << b;
  if (p.x_mask & bit_a) out.z_mask ^= bit_b;
  if (p.x_mask & bit_b) out.z_mask ^= bit_a;
  out.sign = +1;
  return out;
}

}  // namespace decpauli
