#include "decpauli/correct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "decpauli/fwht.hpp"

namespace decpauli {

AssignmentColumn relabel_column(const SparseDistribution& b, uint64_t k) {
  AssignmentColumn a;
  a.n_qubits = b.n_qubits;
  for (const auto& [outcome, weight] : b.entries) a.entries[outcome ^ k] = weight;
  return a;
}

DeconvolveResult deconvolve(std::span<const double> z, std::span<const double> a,
                            double eps) {
  if (z.size() != a.size()) {
    throw std::invalid_argument("deconvolve requires equal-length vectors");
  }
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");

  std::vector<double> fz = fwht_copy(z);
  const std::vector<double> fa = fwht_copy(a);
  const double scale = fa[0] != 0.0 ? std::abs(fa[0]) : 1.0;
  const double threshold = eps * scale;

  DeconvolveResult result;
  for (size_t u = 0; u < fz.size(); ++u) {
    if (std::abs(fa[u]) <= threshold) {
      fz[u] = 0.0;  // pseudo-inverse: dead spectral bins output zero
      ++result.zeroed_bins;
    } else {
      fz[u] /= fa[u];
    }
  }
  ifwht(fz);
  result.x = std::move(fz);
  return result;
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("cannot project an empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("projection input must be finite");
  }

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest prefix whose shifted values stay positive.
  double prefix = 0.0;
  double shift = 0.0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (1.0 - prefix) / static_cast<double>(j + 1);
    if (sorted[j] + candidate > 0.0) shift = candidate;
  }

  std::vector<double> out(v.size());
  double total = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] + shift, 0.0);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

double fidelity(const SparseDistribution& p, const SparseDistribution& q) {
  if (p.kind != DistKind::strict || q.kind != DistKind::strict) {
    throw std::invalid_argument("fidelity requires strict distributions");
  }
  if (p.n_qubits != q.n_qubits) {
    throw std::invalid_argument("fidelity requires matching qubit counts");
  }
  const SparseDistribution& small = p.entries.size() <= q.entries.size() ? p : q;
  const SparseDistribution& large = p.entries.size() <= q.entries.size() ? q : p;
  double bc = 0.0;
  for (const auto& [outcome, weight] : small.entries) {
    const double other = large.at(outcome);
    if (weight > 0.0 && other > 0.0) bc += std::sqrt(weight * other);
  }
  return std::clamp(bc * bc, 0.0, 1.0);
}

CorrectionResult correct(const SparseDistribution& z, const SparseDistribution& b,
                         uint64_t k, uint32_t t_max, double eps) {
  if (z.kind != DistKind::strict || b.kind != DistKind::strict) {
    throw std::invalid_argument("correct requires strict input distributions");
  }
  if (z.n_qubits != b.n_qubits) {
    throw std::invalid_argument("payload and NEC distributions must share a qubit count");
  }

  const AssignmentColumn column = relabel_column(b, k);
  const CompactResult compact = compact_subspace(z, column, t_max);
  const DeconvolveResult dec = deconvolve(compact.z, compact.a, eps);

  CorrectionResult result;
  result.diagnostics.t = compact.map.t();
  result.diagnostics.dropped_mass_z = compact.dropped_mass_z;
  result.diagnostics.dropped_mass_a = compact.dropped_mass_a;
  result.diagnostics.dropped_mass = compact.dropped_mass_z + compact.dropped_mass_a;
  result.diagnostics.zeroed_bins = dec.zeroed_bins;

  result.quasi.n_qubits = z.n_qubits;
  result.quasi.kind = DistKind::quasi;
  for (uint64_t c = 0; c < dec.x.size(); ++c) {
    const double value = dec.x[c];
    result.diagnostics.quasi_sum += value;
    if (value < 0.0) result.diagnostics.negative_mass -= value;
    if (std::abs(value) > 1e-15) {
      result.quasi.entries.emplace(compact.map.outcome(c), value);
    }
  }

  const std::vector<double> projected = project_to_simplex(dec.x);
  result.corrected.n_qubits = z.n_qubits;
  result.corrected.kind = DistKind::strict;
  for (uint64_t c = 0; c < projected.size(); ++c) {
    if (projected[c] > 0.0) {
      result.corrected.entries.emplace(compact.map.outcome(c), projected[c]);
    }
  }
  return result;
}

}  // namespace decpauli
