#pragma once

// Test-side references, kept independent of the implementation paths they
// check: dense unitaries are built column-by-column through basis-state
// evolution, and matrix identities are evaluated with explicit kron products.

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "decpauli/circuit.hpp"
#include "decpauli/statevector.hpp"

namespace testsupport {

using decpauli::cdouble;
using CMat = std::vector<std::vector<cdouble>>;

inline CMat circuit_unitary(const decpauli::Circuit& c) {
  if (c.n_qubits > 6) throw std::invalid_argument("dense unitary oracle capped at 6 qubits");
  const uint64_t dim = uint64_t{1} << c.n_qubits;
  CMat u(dim, std::vector<cdouble>(dim));
  for (uint64_t col = 0; col < dim; ++col) {
    decpauli::Statevector psi(c.n_qubits, col);
    for (const auto& op : c.ops) psi.apply(op);
    for (uint64_t row = 0; row < dim; ++row) u[row][col] = psi.amplitudes()[row];
  }
  return u;
}

inline double phase_aligned_distance(const std::vector<cdouble>& a,
                                     const std::vector<cdouble>& b) {
  size_t pivot = 0;
  double best = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b[i]) > best) {
      best = std::abs(b[i]);
      pivot = i;
    }
  }
  cdouble phase{1.0, 0.0};
  if (best > 1e-12 && std::abs(a[pivot]) > 1e-12) {
    phase = a[pivot] / b[pivot];
    phase /= std::abs(phase);
  }
  double dist = 0.0;
  for (size_t i = 0; i < a.size(); ++i) dist = std::max(dist, std::abs(a[i] - phase * b[i]));
  return dist;
}

inline double phase_aligned_matrix_distance(const CMat& a, const CMat& b) {
  std::vector<cdouble> fa, fb;
  for (const auto& row : a) fa.insert(fa.end(), row.begin(), row.end());
  for (const auto& row : b) fb.insert(fb.end(), row.begin(), row.end());
  return phase_aligned_distance(fa, fb);
}

inline CMat matmul(const CMat& a, const CMat& b) {
  const size_t n = a.size(), m = b[0].size(), k = b.size();
  CMat out(n, std::vector<cdouble>(m, cdouble{0.0, 0.0}));
  for (size_t i = 0; i < n; ++i) {
    for (size_t l = 0; l < k; ++l) {
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

/// kron(A, B): A acts on the high bits, B on the low bits.
inline CMat kron(const CMat& a, const CMat& b) {
  const size_t an = a.size(), bn = b.size();
  CMat out(an * bn, std::vector<cdouble>(an * bn));
  for (size_t i = 0; i < an; ++i) {
    for (size_t j = 0; j < an; ++j) {
      for (size_t k = 0; k < bn; ++k) {
        for (size_t l = 0; l < bn; ++l) out[i * bn + k][j * bn + l] = a[i][j] * b[k][l];
      }
    }
  }
  return out;
}

inline const CMat& pauli_matrix(char p) {
  static const CMat i2 = {{1.0, 0.0}, {0.0, 1.0}};
  static const CMat x = {{0.0, 1.0}, {1.0, 0.0}};
  static const CMat y = {{0.0, cdouble{0.0, -1.0}}, {cdouble{0.0, 1.0}, 0.0}};
  static const CMat z = {{1.0, 0.0}, {0.0, -1.0}};
  switch (p) {
    case 'I': return i2;
    case 'X': return x;
    case 'Y': return y;
    case 'Z': return z;
  }
  throw std::invalid_argument("unknown pauli character");
}

inline CMat cz_matrix() {
  CMat m(4, std::vector<cdouble>(4, cdouble{0.0, 0.0}));
  for (int i = 0; i < 4; ++i) m[i][i] = i == 3 ? -1.0 : 1.0;
  return m;
}

/// Random native circuit over {cz, sx, rz, x}.
inline decpauli::Circuit random_native_circuit(uint32_t n, size_t n_ops, std::mt19937_64& rng) {
  decpauli::Circuit c;
  c.n_qubits = n;
  std::uniform_int_distribution<int> kind_pick(0, 3);
  std::uniform_int_distribution<uint32_t> qubit_pick(0, n - 1);
  std::uniform_real_distribution<double> angle_pick(-3.0, 3.0);
  for (size_t i = 0; i < n_ops; ++i) {
    switch (kind_pick(rng)) {
      case 0: {
        if (n < 2) {
          c.ops.push_back(decpauli::GateOp::sx(0));
          break;
        }
        uint32_t a = qubit_pick(rng), b = qubit_pick(rng);
        while (b == a) b = qubit_pick(rng);
        c.ops.push_back(decpauli::GateOp::cz(a, b));
        break;
      }
      case 1: c.ops.push_back(decpauli::GateOp::sx(qubit_pick(rng))); break;
      case 2: c.ops.push_back(decpauli::GateOp::rz(angle_pick(rng), qubit_pick(rng))); break;
      default: c.ops.push_back(decpauli::GateOp::x(qubit_pick(rng))); break;
    }
  }
  return c;
}

}  // namespace testsupport
