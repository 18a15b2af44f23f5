#pragma once

#include <cstdint>

#include "decpauli/circuit.hpp"

namespace decpauli {

/// H + CX ladder; ideal output is uniform on {00..0, 11..1}.
Circuit make_ghz(uint32_t n);

/// One-excitation Dicke (W) state via cascaded controlled rotations; ideal
/// output is uniform on the n one-hot strings.
Circuit make_dicke_one_excitation(uint32_t n);

/// Phase estimation of a phase gate with eigenphase 2*pi*theta, m counting
/// qubits plus one eigenstate qubit (qubit m, prepared in |1>). For dyadic
/// theta = j / 2^m the ideal output is exactly |j> on the counting register.
Circuit make_qpe(uint32_t m_counting, double theta);

/// Grover search for the all-ones string. iterations < 0 selects the optimal
/// floor(pi/4 * sqrt(2^n)).
Circuit make_grover_all_ones(uint32_t n, int iterations = -1);

int grover_optimal_iterations(uint32_t n);

}  // namespace decpauli
