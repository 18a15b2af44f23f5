#include "decpauli/subspace.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace decpauli {

namespace {

/// Reduced-echelon GF(2) basis over 64-bit vectors.
class Gf2Basis {
 public:
  /// Inserts v into the span; returns false if v was already dependent.
  bool insert(uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    const uint32_t pivot = 63 - static_cast<uint32_t>(std::countl_zero(v));
    for (size_t j = 0; j < basis_.size(); ++j) {
      if ((basis_[j] >> pivot) & 1) basis_[j] ^= v;
    }
    basis_.push_back(v);
    pivots_.push_back(pivot);
    return true;
  }

  bool contains(uint64_t v) const { return reduce(v) == 0; }
  size_t dim() const { return basis_.size(); }
  const std::vector<uint64_t>& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }

 private:
  uint64_t reduce(uint64_t v) const {
    for (size_t i = 0; i < basis_.size(); ++i) {
      if ((v >> pivots_[i]) & 1) v ^= basis_[i];
    }
    return v;
  }

  std::vector<uint64_t> basis_;
  std::vector<uint32_t> pivots_;
};

}  // namespace

std::optional<uint64_t> ReducedIndexMap::coord(uint64_t displacement) const {
  uint64_t c = 0;
  for (size_t i = 0; i < basis.size(); ++i) {
    if ((displacement >> pivots[i]) & 1) {
      displacement ^= basis[i];
      c |= uint64_t{1} << i;
    }
  }
  if (displacement != 0) return std::nullopt;
  return c;
}

uint64_t ReducedIndexMap::displacement(uint64_t compact) const {
  uint64_t v = 0;
  for (size_t i = 0; i < basis.size(); ++i) {
    if ((compact >> i) & 1) v ^= basis[i];
  }
  return v;
}

CompactResult compact_subspace(const SparseDistribution& z, const AssignmentColumn& a,
                               uint32_t t_max) {
  if (z.entries.empty() || a.entries.empty()) {
    throw std::invalid_argument("compact_subspace requires non-empty distributions");
  }
  if (t_max == 0 || t_max > 26) {
    throw std::invalid_argument("t_max must be in [1, 26]");
  }

  const uint64_t z0 = z.argmax();

  // Merged support: displacement vectors weighted by the heaviest mass that
  // references them from either side.
  std::map<uint64_t, double> weight_by_vec;
  for (const auto& [d, w] : a.entries) {
    if (d != 0) weight_by_vec[d] = std::max(weight_by_vec[d], w);
  }
  for (const auto& [s, w] : z.entries) {
    const uint64_t v = s ^ z0;
    if (v != 0) weight_by_vec[v] = std::max(weight_by_vec[v], w);
  }

  std::vector<std::pair<uint64_t, double>> elements(weight_by_vec.begin(), weight_by_vec.end());
  std::sort(elements.begin(), elements.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.second != rhs.second) return lhs.second > rhs.second;
    return lhs.first < rhs.first;
  });

  // Largest weight-ordered prefix whose span fits in t_max dimensions; the
  // span dimension is monotone, so everything past the first overflow drops.
  Gf2Basis basis;
  for (const auto& [vec, weight] : elements) {
    if (basis.contains(vec)) continue;
    if (basis.dim() == t_max) break;
    basis.insert(vec);
  }

  CompactResult result;
  result.map.n_qubits = z.n_qubits;
  result.map.reference = z0;
  result.map.basis = basis.basis();
  result.map.pivots = basis.pivots();

  const uint64_t size = result.map.size();
  result.z.assign(size, 0.0);
  result.a.assign(size, 0.0);
  for (const auto& [s, w] : z.entries) {
    if (auto c = result.map.coord(s ^ z0)) {
      result.z[*c] += w;
    } else {
      result.dropped_mass_z += w;
    }
  }
  for (const auto& [d, w] : a.entries) {
    if (auto c = result.map.coord(d)) {
      result.a[*c] += w;
    } else {
      result.dropped_mass_a += w;
    }
  }
  return result;
}

}  // namespace decpauli
