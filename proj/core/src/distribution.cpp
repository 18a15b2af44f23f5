#include "decpauli/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace decpauli {

double SparseDistribution::mass() const {
  double sum = 0.0;
  for (const auto& [outcome, weight] : entries) sum += weight;
  return sum;
}

double SparseDistribution::at(uint64_t outcome) const {
  auto it = entries.find(outcome);
  return it == entries.end() ? 0.0 : it->second;
}

uint64_t SparseDistribution::argmax() const {
  if (entries.empty()) throw std::invalid_argument("argmax of an empty distribution");
  uint64_t best = entries.begin()->first;
  double best_w = entries.begin()->second;
  for (const auto& [outcome, weight] : entries) {
    if (weight > best_w) {  // strict: ties keep the smaller index
      best = outcome;
      best_w = weight;
    }
  }
  return best;
}

void SparseDistribution::validate(double tol) const {
  for (const auto& [outcome, weight] : entries) {
    if (!std::isfinite(weight)) throw std::invalid_argument("non-finite weight");
    if (n_qubits < 64 && outcome >= (uint64_t{1} << n_qubits)) {
      throw std::invalid_argument("outcome exceeds the qubit range");
    }
    if (kind == DistKind::strict && weight < 0.0) {
      throw std::invalid_argument("strict distribution has a negative weight");
    }
  }
  if (std::abs(mass() - 1.0) > tol) {
    throw std::invalid_argument("distribution mass deviates from 1 beyond tolerance");
  }
}

double AssignmentColumn::mass() const {
  double sum = 0.0;
  for (const auto& [d, weight] : entries) sum += weight;
  return sum;
}

double AssignmentColumn::at(uint64_t displacement) const {
  auto it = entries.find(displacement);
  return it == entries.end() ? 0.0 : it->second;
}

std::string to_bitstring(uint64_t outcome, uint32_t n_qubits) {
  std::string s(n_qubits, '0');
  for (uint32_t q = 0; q < n_qubits; ++q) {
    if ((outcome >> q) & 1) s[n_qubits - 1 - q] = '1';
  }
  return s;
}

uint64_t from_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) {
    throw std::invalid_argument("bitstring must have 1..64 characters");
  }
  uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring has a non-binary character");
    value = (value << 1) | static_cast<uint64_t>(c - '0');
  }
  return value;
}

}  // namespace decpauli
