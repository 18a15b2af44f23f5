#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "decpauli/circuit.hpp"
#include "decpauli/pauli.hpp"

namespace decpauli {

/// Rewrites a circuit into the native set {CZ, SX, RZ, X}. Single-qubit gates
/// go through the ZXZXZ template (H through the shorter RZ.SX.RZ), CX becomes
/// an H-conjugated CZ, CP becomes RZ pairs around CX. Adjacent RZ on the same
/// qubit merge and RZ with angle 0 mod 2pi (within 1e-12) are dropped.
Circuit lower_to_native(const Circuit& c);

/// One twirled CZ site: the sampled pre Pauli on the CZ's qubit pair and its
/// CZ-conjugate inserted after the gate.
struct TwirlSite {
  size_t op_index = 0;  // index of the CZ in the input circuit
  uint32_t qubit_a = 0;
  uint32_t qubit_b = 0;
  Pauli1 pre_a = Pauli1::I;
  Pauli1 pre_b = Pauli1::I;
  Pauli1 post_a = Pauli1::I;
  Pauli1 post_b = Pauli1::I;

  std::string pre_label() const;
  std::string post_label() const;
};

struct TwirlRecord {
  uint64_t seed = 0;
  std::vector<TwirlSite> sites;
};

/// Randomized compiling of every CZ: a uniformly sampled two-qubit Pauli is
/// compiled in before the gate and its CZ-conjugate after, so the circuit
/// stays unitarily equivalent up to a global phase. Deterministic per seed.
/// Requires a native circuit.
std::pair<Circuit, TwirlRecord> pauli_twirl(const Circuit& c, uint64_t seed);

/// Applies an existing record (shared-twirl mode). The record's CZ sites must
/// match the circuit's.
Circuit apply_twirl(const Circuit& c, const TwirlRecord& record);

/// Noise estimation circuit: every SX replaced by X, all else untouched.
/// Requires a native circuit.
Circuit build_nec(const Circuit& c);

/// Ideal output of a superposition-free native circuit, by propagating the
/// all-zeros bitstring (X flips a bit, CZ and RZ are phase-only). Throws if
/// the circuit contains SX or a non-native gate.
uint64_t nec_ideal_output(const Circuit& nec);

}  // namespace decpauli
