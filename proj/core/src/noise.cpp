#include "decpauli/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "decpauli/rng.hpp"

namespace decpauli {

void NoiseModel::validate() const {
  for (double p : {p1, p2, p_meas}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
  }
}

void PauliChannel::validate(double tol) const {
  double sum = 0.0;
  std::set<std::pair<uint64_t, uint64_t>> seen;
  for (const auto& [pauli, chi] : terms) {
    pauli.validate();
    if (pauli.n != n_qubits) throw std::invalid_argument("channel term width mismatch");
    if (chi < 0.0) throw std::invalid_argument("channel weight is negative");
    if (!seen.insert({pauli.x_mask, pauli.z_mask}).second) {
      throw std::invalid_argument("channel has duplicate Pauli strings");
    }
    sum += chi;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("channel weights do not sum to 1");
  }
}

PauliChannel random_pauli_channel(uint32_t n, size_t n_terms, uint64_t seed) {
  if (n == 0 || n > 16) throw std::invalid_argument("channel width must be in [1, 16]");
  const uint64_t n_paulis = uint64_t{1} << (2 * n);
  if (n_terms == 0 || n_terms > n_paulis) {
    throw std::invalid_argument("term count must be in [1, 4^n]");
  }

  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_int_distribution<uint64_t> pick(0, n_paulis - 1);
  std::set<uint64_t> codes;
  while (codes.size() < n_terms) codes.insert(pick(rng));

  PauliChannel ch;
  ch.n_qubits = n;
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (uint64_t code : codes) {
    PauliString p;
    p.n = n;
    p.x_mask = code & ((uint64_t{1} << n) - 1);
    p.z_mask = code >> n;
    const double w = expo(rng);
    ch.terms.emplace_back(p, w);
    total += w;
  }
  for (auto& [pauli, chi] : ch.terms) chi /= total;
  return ch;
}

SparseDistribution apply_pauli_channel(const PauliChannel& ch, const SparseDistribution& x) {
  ch.validate();
  if (ch.n_qubits != x.n_qubits) throw std::invalid_argument("channel/distribution width mismatch");
  SparseDistribution z;
  z.n_qubits = x.n_qubits;
  z.kind = x.kind;
  for (const auto& [pauli, chi] : ch.terms) {
    for (const auto& [outcome, weight] : x.entries) {
      z.entries[outcome ^ pauli.x_mask] += chi * weight;
    }
  }
  return z;
}

// ---------------------------------------------------------------------------
// Trajectory sampler
// ---------------------------------------------------------------------------

namespace {

struct TrajOp {
  enum Type : uint8_t { kMat1, kRZ, kX, kCZ };
  Type type;
  uint32_t q0 = 0;
  uint32_t q1 = 0;
  cdouble ph0, ph1;  // kRZ
  Mat2 m{};          // kMat1
};

struct CompiledCircuit {
  uint32_t n = 0;
  std::vector<TrajOp> ops;
  std::vector<uint32_t> oneq_sites;  // op indices eligible for p1 noise
  std::vector<uint32_t> twoq_sites;  // op indices eligible for p2 noise
};

CompiledCircuit compile_native(const Circuit& c) {
  CompiledCircuit out;
  out.n = c.n_qubits;
  for (const GateOp& op : c.ops) {
    TrajOp t;
    switch (op.kind) {
      case GateKind::CZ:
        t.type = TrajOp::kCZ;
        t.q0 = op.qubits[0];
        t.q1 = op.qubits[1];
        out.twoq_sites.push_back(static_cast<uint32_t>(out.ops.size()));
        break;
      case GateKind::X:
        t.type = TrajOp::kX;
        t.q0 = op.qubits[0];
        out.oneq_sites.push_back(static_cast<uint32_t>(out.ops.size()));
        break;
      case GateKind::RZ:
        t.type = TrajOp::kRZ;
        t.q0 = op.qubits[0];
        t.ph0 = std::polar(1.0, -op.angle / 2);
        t.ph1 = std::polar(1.0, op.angle / 2);
        out.oneq_sites.push_back(static_cast<uint32_t>(out.ops.size()));
        break;
      case GateKind::SX:
        t.type = TrajOp::kMat1;
        t.q0 = op.qubits[0];
        t.m = gate_matrix1(op);
        out.oneq_sites.push_back(static_cast<uint32_t>(out.ops.size()));
        break;
      case GateKind::MeasureAll:
        continue;  // implicit
      default:
        throw std::invalid_argument("sample_noisy requires a native circuit");
    }
    out.ops.push_back(t);
  }
  return out;
}

void apply_traj_op(cdouble* amp, uint32_t n, const TrajOp& op) {
  switch (op.type) {
    case TrajOp::kMat1:
      kernel::apply_matrix1(amp, n, op.q0, op.m);
      break;
    case TrajOp::kRZ:
      kernel::apply_rz(amp, n, op.q0, op.ph0, op.ph1);
      break;
    case TrajOp::kX:
      kernel::apply_x(amp, n, op.q0);
      break;
    case TrajOp::kCZ:
      kernel::apply_cz(amp, n, op.q0, op.q1);
      break;
  }
}

/// k distinct values from sites, appended to out. Rejection sampling for
/// small k, partial Fisher-Yates otherwise.
void pick_distinct(std::mt19937_64& rng, const std::vector<uint32_t>& sites, uint32_t k,
                   std::vector<uint32_t>& out) {
  const uint32_t size = static_cast<uint32_t>(sites.size());
  if (k == 0) return;
  if (k >= size) {
    out.insert(out.end(), sites.begin(), sites.end());
    return;
  }
  std::uniform_int_distribution<uint32_t> pick(0, size - 1);
  if (k <= 32 && k <= size / 2) {
    const size_t start = out.size();
    while (out.size() - start < k) {
      const uint32_t v = sites[pick(rng)];
      if (std::find(out.begin() + start, out.end(), v) == out.end()) out.push_back(v);
    }
    return;
  }
  std::vector<uint32_t> scratch = sites;
  for (uint32_t j = 0; j < k; ++j) {
    std::uniform_int_distribution<uint32_t> tail(j, size - 1);
    std::swap(scratch[j], scratch[tail(rng)]);
    out.push_back(scratch[j]);
  }
}

struct NoiselessCache {
  bool prefixes_available = false;
  std::vector<std::vector<cdouble>> after;  // state after op i
  std::vector<double> final_cdf;            // inclusive prefix sums of |amp|^2
};

NoiselessCache build_cache(const CompiledCircuit& cc, size_t byte_limit) {
  NoiselessCache cache;
  const uint64_t dim = uint64_t{1} << cc.n;
  const size_t bytes = cc.ops.size() * dim * sizeof(cdouble);
  std::vector<cdouble> state(dim, cdouble{0.0, 0.0});
  state[0] = 1.0;
  cache.prefixes_available = bytes <= byte_limit;
  if (cache.prefixes_available) cache.after.reserve(cc.ops.size());
  for (const TrajOp& op : cc.ops) {
    apply_traj_op(state.data(), cc.n, op);
    if (cache.prefixes_available) cache.after.push_back(state);
  }
  cache.final_cdf.resize(dim);
  double cum = 0.0;
  for (uint64_t i = 0; i < dim; ++i) {
    cum += std::norm(state[i]);
    cache.final_cdf[i] = cum;
  }
  return cache;
}

uint64_t draw_from_cdf(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<uint64_t>(it - cdf.begin());
}

}  // namespace

std::map<uint64_t, uint64_t> sample_noisy_counts(const Circuit& c, const NoiseModel& nm,
                                                 uint64_t shots, uint64_t seed,
                                                 const SampleOptions& opts) {
  c.validate();
  nm.validate();
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (c.n_qubits > opts.qubit_cap) {
    throw std::invalid_argument("circuit exceeds the sampling qubit cap (" +
                                std::to_string(opts.qubit_cap) + ")");
  }
  if (opts.shots_per_trajectory == 0) {
    throw std::invalid_argument("shots_per_trajectory must be >= 1");
  }

  const CompiledCircuit cc = compile_native(c);
  const uint32_t n = c.n_qubits;
  const uint64_t dim = uint64_t{1} << n;
  const NoiselessCache cache = build_cache(cc, opts.prefix_cache_limit);

  const uint64_t spt = opts.shots_per_trajectory;
  const uint64_t n_traj = (shots + spt - 1) / spt;
  uint32_t n_threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = static_cast<uint32_t>(std::min<uint64_t>(n_threads, n_traj));

  const uint32_t n1 = static_cast<uint32_t>(cc.oneq_sites.size());
  const uint32_t n2 = static_cast<uint32_t>(cc.twoq_sites.size());

  std::vector<std::vector<uint64_t>> counts(n_threads, std::vector<uint64_t>(dim, 0));

  auto worker = [&](uint32_t tid, uint64_t lo, uint64_t hi) {
    std::vector<uint64_t>& local = counts[tid];
    std::vector<cdouble> amp(dim);
    std::vector<uint32_t> events;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (uint64_t traj = lo; traj < hi; ++traj) {
      std::mt19937_64 rng(derive_seed(seed, traj));
      const uint64_t draws = (traj + 1 == n_traj) ? shots - spt * (n_traj - 1) : spt;

      uint32_t k1 = 0, k2 = 0;
      if (nm.p1 > 0.0 && n1 > 0) {
        k1 = static_cast<uint32_t>(std::binomial_distribution<uint32_t>(n1, nm.p1)(rng));
      }
      if (nm.p2 > 0.0 && n2 > 0) {
        k2 = static_cast<uint32_t>(std::binomial_distribution<uint32_t>(n2, nm.p2)(rng));
      }

      const cdouble* outcome_amp = nullptr;
      if (k1 + k2 > 0) {
        events.clear();
        pick_distinct(rng, cc.oneq_sites, k1, events);
        pick_distinct(rng, cc.twoq_sites, k2, events);
        std::sort(events.begin(), events.end());

        const uint32_t first = events[0];
        if (cache.prefixes_available) {
          std::copy(cache.after[first].begin(), cache.after[first].end(), amp.begin());
        } else {
          std::fill(amp.begin(), amp.end(), cdouble{0.0, 0.0});
          amp[0] = 1.0;
          for (uint32_t g = 0; g <= first; ++g) apply_traj_op(amp.data(), n, cc.ops[g]);
        }

        const auto inject = [&](uint32_t op_index) {
          const TrajOp& op = cc.ops[op_index];
          if (op.type == TrajOp::kCZ) {
            const int code = std::uniform_int_distribution<int>(1, 15)(rng);
            const uint64_t xa = static_cast<uint64_t>(code & 1) << op.q0;
            const uint64_t za = static_cast<uint64_t>((code >> 1) & 1) << op.q0;
            const uint64_t xb = static_cast<uint64_t>((code >> 2) & 1) << op.q1;
            const uint64_t zb = static_cast<uint64_t>((code >> 3) & 1) << op.q1;
            kernel::apply_pauli(amp.data(), n, xa | xb, za | zb);
          } else {
            const int code = std::uniform_int_distribution<int>(1, 3)(rng);
            kernel::apply_pauli(amp.data(), n, static_cast<uint64_t>(code & 1) << op.q0,
                                static_cast<uint64_t>(code >> 1) << op.q0);
          }
        };

        inject(first);
        size_t next = 1;
        for (uint32_t g = first + 1; g < cc.ops.size(); ++g) {
          apply_traj_op(amp.data(), n, cc.ops[g]);
          if (next < events.size() && events[next] == g) {
            inject(g);
            ++next;
          }
        }
        outcome_amp = amp.data();
      }

      for (uint64_t d = 0; d < draws; ++d) {
        const double u = unif(rng);
        uint64_t outcome = outcome_amp ? kernel::sample_outcome(outcome_amp, n, u)
                                       : draw_from_cdf(cache.final_cdf, u);
        if (nm.p_meas > 0.0) {
          for (uint32_t q = 0; q < n; ++q) {
            if (unif(rng) < nm.p_meas) outcome ^= uint64_t{1} << q;
          }
        }
        ++local[outcome];
      }
    }
  };

  if (n_threads == 1) {
    worker(0, 0, n_traj);
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < n_threads; ++t) {
      const uint64_t lo = n_traj * t / n_threads;
      const uint64_t hi = n_traj * (t + 1) / n_threads;
      pool.emplace_back(worker, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::map<uint64_t, uint64_t> merged;
  for (uint64_t i = 0; i < dim; ++i) {
    uint64_t total = 0;
    for (uint32_t t = 0; t < n_threads; ++t) total += counts[t][i];
    if (total > 0) merged.emplace(i, total);
  }
  return merged;
}

SparseDistribution sample_noisy(const Circuit& c, const NoiseModel& nm, uint64_t shots,
                                uint64_t seed, const SampleOptions& opts) {
  const auto counts = sample_noisy_counts(c, nm, shots, seed, opts);
  SparseDistribution dist;
  dist.n_qubits = c.n_qubits;
  dist.kind = DistKind::strict;
  const double inv = 1.0 / static_cast<double>(shots);
  for (const auto& [outcome, count] : counts) {
    dist.entries.emplace(outcome, static_cast<double>(count) * inv);
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Exact density-matrix evolution
// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(uint32_t n_qubits) : n_(n_qubits) {
  if (n_ == 0 || n_ > 13) throw std::invalid_argument("density matrix width must be in [1, 13]");
  rho_.assign(dim() * dim(), cdouble{0.0, 0.0});
  rho_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const Statevector& psi) {
  DensityMatrix dm(psi.n_qubits());
  const auto& amp = psi.amplitudes();
  const uint64_t d = dm.dim();
  for (uint64_t r = 0; r < d; ++r) {
    for (uint64_t c = 0; c < d; ++c) {
      dm.rho_[r * d + c] = amp[r] * std::conj(amp[c]);
    }
  }
  return dm;
}

void DensityMatrix::apply_matrix1(uint32_t q, const Mat2& m) {
  const uint64_t d = dim();
  const uint64_t mask = uint64_t{1} << q;
  // rows: rho <- U rho
  for (uint64_t r = 0; r < d; ++r) {
    if (r & mask) continue;
    const uint64_t r1 = r | mask;
    for (uint64_t c = 0; c < d; ++c) {
      const cdouble a = rho_[r * d + c], b = rho_[r1 * d + c];
      rho_[r * d + c] = m[0] * a + m[1] * b;
      rho_[r1 * d + c] = m[2] * a + m[3] * b;
    }
  }
  // columns: rho <- rho U^dag
  for (uint64_t c = 0; c < d; ++c) {
    if (c & mask) continue;
    const uint64_t c1 = c | mask;
    for (uint64_t r = 0; r < d; ++r) {
      const cdouble a = rho_[r * d + c], b = rho_[r * d + c1];
      rho_[r * d + c] = a * std::conj(m[0]) + b * std::conj(m[1]);
      rho_[r * d + c1] = a * std::conj(m[2]) + b * std::conj(m[3]);
    }
  }
}

void DensityMatrix::apply_cz(uint32_t qa, uint32_t qb) {
  const uint64_t d = dim();
  const uint64_t both = (uint64_t{1} << qa) | (uint64_t{1} << qb);
  for (uint64_t r = 0; r < d; ++r) {
    const bool sr = (r & both) == both;
    for (uint64_t c = 0; c < d; ++c) {
      if (sr != ((c & both) == both)) rho_[r * d + c] = -rho_[r * d + c];
    }
  }
}

void DensityMatrix::apply(const GateOp& op) {
  switch (op.kind) {
    case GateKind::CZ:
      apply_cz(op.qubits[0], op.qubits[1]);
      break;
    case GateKind::CP: {
      const uint64_t d = dim();
      const uint64_t both = (uint64_t{1} << op.qubits[0]) | (uint64_t{1} << op.qubits[1]);
      const cdouble ph = std::polar(1.0, op.angle);
      for (uint64_t r = 0; r < d; ++r) {
        for (uint64_t c = 0; c < d; ++c) {
          const bool sr = (r & both) == both, sc = (c & both) == both;
          if (sr && !sc) rho_[r * d + c] *= ph;
          if (!sr && sc) rho_[r * d + c] *= std::conj(ph);
        }
      }
      break;
    }
    case GateKind::CX: {
      const uint64_t d = dim();
      const uint64_t cm = uint64_t{1} << op.qubits[0];
      const uint64_t tm = uint64_t{1} << op.qubits[1];
      const auto perm = [&](uint64_t i) { return (i & cm) ? i ^ tm : i; };
      std::vector<cdouble> next(rho_.size());
      for (uint64_t r = 0; r < d; ++r) {
        for (uint64_t c = 0; c < d; ++c) next[r * d + c] = rho_[perm(r) * d + perm(c)];
      }
      rho_ = std::move(next);
      break;
    }
    case GateKind::MeasureAll:
      break;
    default:
      apply_matrix1(op.qubits[0], gate_matrix1(op));
      break;
  }
}

void DensityMatrix::apply_depolarizing1(uint32_t q, double p) {
  if (p == 0.0) return;
  const uint64_t d = dim();
  const uint64_t mask = uint64_t{1} << q;
  const double keep = 1.0 - 2.0 * p / 3.0;
  const double swap = 2.0 * p / 3.0;
  const double damp = 1.0 - 4.0 * p / 3.0;
  for (uint64_t r = 0; r < d; ++r) {
    for (uint64_t c = 0; c < d; ++c) {
      const bool br = r & mask, bc = c & mask;
      if (br != bc) {
        rho_[r * d + c] *= damp;
      } else if (!br) {  // handle the (0,0)/(1,1) pair once
        const uint64_t r1 = r | mask, c1 = c | mask;
        const cdouble a = rho_[r * d + c], b = rho_[r1 * d + c1];
        rho_[r * d + c] = keep * a + swap * b;
        rho_[r1 * d + c1] = swap * a + keep * b;
      }
    }
  }
}

void DensityMatrix::apply_depolarizing2(uint32_t qa, uint32_t qb, double p) {
  if (p == 0.0) return;
  const uint64_t d = dim();
  const uint64_t ma = uint64_t{1} << qa;
  const uint64_t mb = uint64_t{1} << qb;
  const uint64_t sub = ma | mb;
  const uint64_t pattern[4] = {0, ma, mb, ma | mb};
  const double mix = 16.0 * p / 15.0;
  const double keep = 1.0 - mix;
  for (uint64_t r = 0; r < d; ++r) {
    if (r & sub) continue;
    for (uint64_t c = 0; c < d; ++c) {
      if (c & sub) continue;
      cdouble tr{0.0, 0.0};
      for (uint64_t s : pattern) tr += rho_[(r | s) * d + (c | s)];
      tr *= 0.25;
      for (uint64_t sr : pattern) {
        for (uint64_t sc : pattern) {
          cdouble& e = rho_[(r | sr) * d + (c | sc)];
          e = keep * e + (sr == sc ? mix * tr : cdouble{0.0, 0.0});
        }
      }
    }
  }
}

double DensityMatrix::trace() const {
  const uint64_t d = dim();
  double t = 0.0;
  for (uint64_t i = 0; i < d; ++i) t += rho_[i * d + i].real();
  return t;
}

std::vector<double> DensityMatrix::diagonal() const {
  const uint64_t d = dim();
  std::vector<double> diag(d);
  for (uint64_t i = 0; i < d; ++i) diag[i] = rho_[i * d + i].real();
  return diag;
}

std::vector<double> apply_readout_flips(std::vector<double> diag, uint32_t n, double p) {
  if (p == 0.0) return diag;
  for (uint32_t q = 0; q < n; ++q) {
    const uint64_t mask = uint64_t{1} << q;
    for (uint64_t i = 0; i < diag.size(); ++i) {
      if (i & mask) continue;
      const double a = diag[i], b = diag[i | mask];
      diag[i] = (1.0 - p) * a + p * b;
      diag[i | mask] = p * a + (1.0 - p) * b;
    }
  }
  return diag;
}

namespace {

void evolve_noisy(DensityMatrix& dm, const Circuit& c, const NoiseModel& nm) {
  for (const GateOp& op : c.ops) {
    dm.apply(op);
    switch (op.kind) {
      case GateKind::SX:
      case GateKind::RZ:
      case GateKind::X:
        dm.apply_depolarizing1(op.qubits[0], nm.p1);
        break;
      case GateKind::CZ:
        dm.apply_depolarizing2(op.qubits[0], op.qubits[1], nm.p2);
        break;
      default:
        break;
    }
  }
}

SparseDistribution diag_to_distribution(std::vector<double> diag, uint32_t n,
                                        const NoiseModel& nm) {
  diag = apply_readout_flips(std::move(diag), n, nm.p_meas);
  SparseDistribution dist;
  dist.n_qubits = n;
  dist.kind = DistKind::strict;
  for (uint64_t i = 0; i < diag.size(); ++i) {
    if (diag[i] > 1e-16) dist.entries.emplace(i, diag[i]);
  }
  return dist;
}

void check_exact_caps(const Circuit& c, uint32_t qubit_cap) {
  c.validate();
  if (!c.is_native()) {
    throw std::invalid_argument("exact noisy evolution requires a native circuit");
  }
  if (c.n_qubits > qubit_cap) {
    throw std::invalid_argument("circuit exceeds the density-matrix qubit cap (" +
                                std::to_string(qubit_cap) + ")");
  }
}

}  // namespace

SparseDistribution exact_noisy_distribution(const Circuit& c, const NoiseModel& nm,
                                            uint32_t qubit_cap) {
  check_exact_caps(c, qubit_cap);
  nm.validate();
  DensityMatrix dm(c.n_qubits);
  evolve_noisy(dm, c, nm);
  return diag_to_distribution(dm.diagonal(), c.n_qubits, nm);
}

AssignmentColumn exact_column_oracle(const Circuit& c, const NoiseModel& nm, uint64_t k,
                                     uint32_t qubit_cap) {
  check_exact_caps(c, qubit_cap);
  nm.validate();
  if (k >= (uint64_t{1} << c.n_qubits)) throw std::invalid_argument("outcome k out of range");

  // Prepare U^dag |k> so the ideal output distribution is a delta at k.
  Statevector psi(c.n_qubits, k);
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) psi.apply_inverse(*it);

  DensityMatrix dm = DensityMatrix::from_pure(psi);
  evolve_noisy(dm, c, nm);
  const SparseDistribution out = diag_to_distribution(dm.diagonal(), c.n_qubits, nm);

  AssignmentColumn col;
  col.n_qubits = c.n_qubits;
  for (const auto& [outcome, weight] : out.entries) col.entries[outcome ^ k] = weight;
  return col;
}

DenseMatrix brute_force_assignment(const PauliChannel& ch, uint32_t qubit_cap) {
  ch.validate();
  if (ch.n_qubits > qubit_cap) {
    throw std::invalid_argument("channel exceeds the brute-force qubit cap (" +
                                std::to_string(qubit_cap) + ")");
  }
  const uint64_t d = uint64_t{1} << ch.n_qubits;
  DenseMatrix a;
  a.dim = d;
  a.data.assign(d * d, 0.0);
  // P_i |l> lands on |l ^ x_mask>; Z components only contribute phase.
  for (const auto& [pauli, chi] : ch.terms) {
    for (uint64_t l = 0; l < d; ++l) a.at(l ^ pauli.x_mask, l) += chi;
  }
  return a;
}

}  // namespace decpauli
