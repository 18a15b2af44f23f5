#include "decpauli/catalog.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace decpauli {

namespace {

constexpr double kPi = std::numbers::pi;

/// Controlled RY: [RY(t/2) on t] CX [RY(-t/2) on t] CX equals CRY(theta)
/// because X RY(-t/2) X = RY(t/2).
void emit_cry(Circuit& c, double theta, uint32_t control, uint32_t target) {
  c.ops.push_back(GateOp::ry(theta / 2, target));
  c.ops.push_back(GateOp::cx(control, target));
  c.ops.push_back(GateOp::ry(-theta / 2, target));
  c.ops.push_back(GateOp::cx(control, target));
}

/// Phase (-1) on the all-ones state of `qs`, synthesized as the diagonal
/// exp(i*pi*prod q) expanded over subset parities:
///   prod x_i = 2^(1-k) * sum_{S nonempty} (-1)^(|S|+1) parity_S(x).
/// Subsets holding the last qubit are walked in reflected Gray order with
/// that qubit as the parity accumulator, then the construction recurses on
/// the rest. Costs 2^k - 2 CX and 2^k - 1 RZ for k qubits.
void emit_all_ones_phase(Circuit& c, const std::vector<uint32_t>& qs) {
  const size_t k = qs.size();
  if (k == 0) return;
  if (k == 1) {
    c.ops.push_back(GateOp::rz(kPi, qs[0]));
    return;
  }
  if (k == 2) {
    c.ops.push_back(GateOp::cz(qs[0], qs[1]));
    return;
  }

  const double base = kPi / static_cast<double>(uint64_t{1} << (k - 1));
  const auto subset_angle = [base](int popcount) {
    return (popcount & 1) ? base : -base;
  };

  std::vector<uint32_t> rest(qs.begin(), qs.end());
  while (rest.size() > 1) {
    const uint32_t acc = rest.back();
    const size_t m = rest.size() - 1;

    // S = {acc}
    c.ops.push_back(GateOp::rz(subset_angle(1), acc));
    uint64_t gray = 0;
    for (uint64_t i = 1; i < (uint64_t{1} << m); ++i) {
      const int changed = std::countr_zero(i);
      c.ops.push_back(GateOp::cx(rest[changed], acc));
      gray = i ^ (i >> 1);
      c.ops.push_back(GateOp::rz(subset_angle(std::popcount(gray) + 1), acc));
    }
    for (size_t b = 0; b < m; ++b) {
      if ((gray >> b) & 1) c.ops.push_back(GateOp::cx(rest[b], acc));
    }
    rest.pop_back();
  }
  c.ops.push_back(GateOp::rz(subset_angle(1), rest[0]));
}

}  // namespace

Circuit make_ghz(uint32_t n) {
  if (n == 0) throw std::invalid_argument("ghz needs at least 1 qubit");
  Circuit c;
  c.n_qubits = n;
  c.name = "ghz" + std::to_string(n);
  c.ops.push_back(GateOp::h(0));
  for (uint32_t i = 0; i + 1 < n; ++i) c.ops.push_back(GateOp::cx(i, i + 1));
  return c;
}

Circuit make_dicke_one_excitation(uint32_t n) {
  if (n == 0) throw std::invalid_argument("dicke_n1 needs at least 1 qubit");
  Circuit c;
  c.n_qubits = n;
  c.name = "dicke" + std::to_string(n) + "_1";
  c.ops.push_back(GateOp::x(0));
  for (uint32_t i = 0; i + 1 < n; ++i) {
    // Pass the excitation along with amplitude 1/sqrt(n - i) of staying.
    const double theta = 2.0 * std::acos(std::sqrt(1.0 / static_cast<double>(n - i)));
    emit_cry(c, theta, i, i + 1);
    c.ops.push_back(GateOp::cx(i + 1, i));
  }
  return c;
}

Circuit make_qpe(uint32_t m_counting, double theta) {
  if (m_counting == 0) throw std::invalid_argument("qpe needs at least 1 counting qubit");
  Circuit c;
  c.n_qubits = m_counting + 1;
  c.name = "qpe" + std::to_string(c.n_qubits);
  const uint32_t eigen = m_counting;

  c.ops.push_back(GateOp::x(eigen));
  for (uint32_t j = 0; j < m_counting; ++j) c.ops.push_back(GateOp::h(j));
  for (uint32_t j = 0; j < m_counting; ++j) {
    const double lambda = 2.0 * kPi * theta * static_cast<double>(uint64_t{1} << j);
    c.ops.push_back(GateOp::cp(lambda, j, eigen));
  }

  // Inverse QFT on the counting register, bit j of the estimate on qubit j.
  for (uint32_t i = 0; i < m_counting / 2; ++i) {
    const uint32_t a = i, b = m_counting - 1 - i;
    c.ops.push_back(GateOp::cx(a, b));
    c.ops.push_back(GateOp::cx(b, a));
    c.ops.push_back(GateOp::cx(a, b));
  }
  for (uint32_t j = 0; j < m_counting; ++j) {
    for (uint32_t k = 0; k < j; ++k) {
      const double lambda = -kPi / static_cast<double>(uint64_t{1} << (j - k));
      c.ops.push_back(GateOp::cp(lambda, k, j));
    }
    c.ops.push_back(GateOp::h(j));
  }
  return c;
}

int grover_optimal_iterations(uint32_t n) {
  return static_cast<int>(std::floor(kPi / 4.0 * std::sqrt(static_cast<double>(uint64_t{1} << n))));
}

Circuit make_grover_all_ones(uint32_t n, int iterations) {
  if (n == 0) throw std::invalid_argument("grover needs at least 1 qubit");
  if (iterations < 0) iterations = grover_optimal_iterations(n);
  Circuit c;
  c.n_qubits = n;
  c.name = "grover" + std::to_string(n);

  std::vector<uint32_t> all(n);
  for (uint32_t q = 0; q < n; ++q) all[q] = q;

  for (uint32_t q : all) c.ops.push_back(GateOp::h(q));
  for (int it = 0; it < iterations; ++it) {
    // Oracle: flip the phase of |11..1>.
    emit_all_ones_phase(c, all);
    // Diffusion about the mean.
    for (uint32_t q : all) c.ops.push_back(GateOp::h(q));
    for (uint32_t q : all) c.ops.push_back(GateOp::x(q));
    emit_all_ones_phase(c, all);
    for (uint32_t q : all) c.ops.push_back(GateOp::x(q));
    for (uint32_t q : all) c.ops.push_back(GateOp::h(q));
  }
  return c;
}

}  // namespace decpauli
