#include "decpauli/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decpauli {

namespace {

constexpr cdouble kI{0.0, 1.0};

Mat2 conj_transpose(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

}  // namespace

Mat2 gate_matrix1(const GateOp& op) {
  switch (op.kind) {
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::SX:
      return {0.5 + 0.5 * kI, 0.5 - 0.5 * kI, 0.5 - 0.5 * kI, 0.5 + 0.5 * kI};
    case GateKind::H: {
      const double s = 1.0 / std::numbers::sqrt2;
      return {s, s, s, -s};
    }
    case GateKind::RZ:
      return {std::polar(1.0, -op.angle / 2), 0.0, 0.0, std::polar(1.0, op.angle / 2)};
    case GateKind::RY: {
      const double c = std::cos(op.angle / 2), s = std::sin(op.angle / 2);
      return {c, -s, s, c};
    }
    default:
      throw std::invalid_argument(std::string("not a single-qubit gate: ") +
                                  gate_name(op.kind));
  }
}

namespace kernel {

void apply_matrix1(cdouble* amp, uint32_t n, uint32_t q, const Mat2& m) {
  const uint64_t mask = uint64_t{1} << q;
  const uint64_t lo = mask - 1;
  const uint64_t half = uint64_t{1} << (n - 1);
  const double m00r = m[0].real(), m00i = m[0].imag();
  const double m01r = m[1].real(), m01i = m[1].imag();
  const double m10r = m[2].real(), m10i = m[2].imag();
  const double m11r = m[3].real(), m11i = m[3].imag();
  for (uint64_t g = 0; g < half; ++g) {
    const uint64_t i0 = ((g & ~lo) << 1) | (g & lo);
    const uint64_t i1 = i0 | mask;
    const double ar = amp[i0].real(), ai = amp[i0].imag();
    const double br = amp[i1].real(), bi = amp[i1].imag();
    amp[i0] = cdouble{m00r * ar - m00i * ai + m01r * br - m01i * bi,
                      m00r * ai + m00i * ar + m01r * bi + m01i * br};
    amp[i1] = cdouble{m10r * ar - m10i * ai + m11r * br - m11i * bi,
                      m10r * ai + m10i * ar + m11r * bi + m11i * br};
  }
}

void apply_rz(cdouble* amp, uint32_t n, uint32_t q, cdouble ph0, cdouble ph1) {
  const uint64_t mask = uint64_t{1} << q;
  const uint64_t dim = uint64_t{1} << n;
  const double p0r = ph0.real(), p0i = ph0.imag();
  const double p1r = ph1.real(), p1i = ph1.imag();
  for (uint64_t i = 0; i < dim; ++i) {
    const double ar = amp[i].real(), ai = amp[i].imag();
    if (i & mask) {
      amp[i] = cdouble{p1r * ar - p1i * ai, p1r * ai + p1i * ar};
    } else {
      amp[i] = cdouble{p0r * ar - p0i * ai, p0r * ai + p0i * ar};
    }
  }
}

void apply_x(cdouble* amp, uint32_t n, uint32_t q) {
  const uint64_t mask = uint64_t{1} << q;
  const uint64_t lo = mask - 1;
  const uint64_t half = uint64_t{1} << (n - 1);
  for (uint64_t g = 0; g < half; ++g) {
    const uint64_t i0 = ((g & ~lo) << 1) | (g & lo);
    std::swap(amp[i0], amp[i0 | mask]);
  }
}

void apply_cz(cdouble* amp, uint32_t n, uint32_t a, uint32_t b) {
  const uint64_t both = (uint64_t{1} << a) | (uint64_t{1} << b);
  const uint64_t dim = uint64_t{1} << n;
  for (uint64_t i = 0; i < dim; ++i) {
    if ((i & both) == both) amp[i] = -amp[i];
  }
}

void apply_cx(cdouble* amp, uint32_t n, uint32_t c, uint32_t t) {
  const uint64_t cm = uint64_t{1} << c;
  const uint64_t tm = uint64_t{1} << t;
  const uint64_t dim = uint64_t{1} << n;
  for (uint64_t i = 0; i < dim; ++i) {
    if ((i & cm) && !(i & tm)) std::swap(amp[i], amp[i | tm]);
  }
}

void apply_cp(cdouble* amp, uint32_t n, uint32_t a, uint32_t b, double lambda) {
  const uint64_t both = (uint64_t{1} << a) | (uint64_t{1} << b);
  const uint64_t dim = uint64_t{1} << n;
  const cdouble ph = std::polar(1.0, lambda);
  for (uint64_t i = 0; i < dim; ++i) {
    if ((i & both) == both) amp[i] *= ph;
  }
}

void apply_pauli(cdouble* amp, uint32_t n, uint64_t x_mask, uint64_t z_mask) {
  const uint64_t dim = uint64_t{1} << n;
  const auto zsign = [z_mask](uint64_t i) {
    return std::popcount(i & z_mask) & 1 ? -1.0 : 1.0;
  };
  if (x_mask == 0) {
    for (uint64_t i = 0; i < dim; ++i) amp[i] *= zsign(i);
    return;
  }
  const uint64_t pivot = x_mask & (~x_mask + 1);
  for (uint64_t i = 0; i < dim; ++i) {
    if (i & pivot) continue;
    const uint64_t j = i ^ x_mask;
    const cdouble t = amp[i] * zsign(i);
    amp[i] = amp[j] * zsign(j);
    amp[j] = t;
  }
}

uint64_t sample_outcome(const cdouble* amp, uint32_t n, double u) {
  const uint64_t dim = uint64_t{1} << n;
  double cum = 0.0;
  for (uint64_t i = 0; i < dim; ++i) {
    cum += std::norm(amp[i]);
    if (u < cum) return i;
  }
  return dim - 1;  // u landed in rounding slack past the last bin
}

}  // namespace kernel

Statevector::Statevector(uint32_t n_qubits, uint64_t basis_state) : n_(n_qubits) {
  if (n_ == 0 || n_ > 28) throw std::invalid_argument("statevector width must be in [1, 28]");
  if (basis_state >= dim()) throw std::invalid_argument("basis state out of range");
  amp_.assign(dim(), cdouble{0.0, 0.0});
  amp_[basis_state] = 1.0;
}

void Statevector::apply(const GateOp& op) {
  switch (op.kind) {
    case GateKind::CZ:
      kernel::apply_cz(amp_.data(), n_, op.qubits[0], op.qubits[1]);
      break;
    case GateKind::CX:
      kernel::apply_cx(amp_.data(), n_, op.qubits[0], op.qubits[1]);
      break;
    case GateKind::CP:
      kernel::apply_cp(amp_.data(), n_, op.qubits[0], op.qubits[1], op.angle);
      break;
    case GateKind::MeasureAll:
      break;  // measurement is implicit at circuit end
    case GateKind::X:
      kernel::apply_x(amp_.data(), n_, op.qubits[0]);
      break;
    default:
      kernel::apply_matrix1(amp_.data(), n_, op.qubits[0], gate_matrix1(op));
      break;
  }
}

void Statevector::apply_inverse(const GateOp& op) {
  switch (op.kind) {
    case GateKind::CZ:
    case GateKind::CX:
    case GateKind::X:
    case GateKind::MeasureAll:
      apply(op);
      break;
    case GateKind::CP:
      kernel::apply_cp(amp_.data(), n_, op.qubits[0], op.qubits[1], -op.angle);
      break;
    default:
      kernel::apply_matrix1(amp_.data(), n_, op.qubits[0],
                            conj_transpose(gate_matrix1(op)));
      break;
  }
}

void Statevector::apply_pauli(uint64_t x_mask, uint64_t z_mask) {
  kernel::apply_pauli(amp_.data(), n_, x_mask, z_mask);
}

double Statevector::norm_sq() const {
  double s = 0.0;
  for (const cdouble& a : amp_) s += std::norm(a);
  return s;
}

double Statevector::probability(uint64_t outcome) const { return std::norm(amp_[outcome]); }

uint64_t Statevector::sample(double u) const {
  return kernel::sample_outcome(amp_.data(), n_, u);
}

SparseDistribution Statevector::distribution(double cutoff) const {
  SparseDistribution dist;
  dist.n_qubits = n_;
  dist.kind = DistKind::strict;
  for (uint64_t i = 0; i < dim(); ++i) {
    const double p = std::norm(amp_[i]);
    if (p >= cutoff) dist.entries.emplace(i, p);
  }
  return dist;
}

SparseDistribution simulate_noiseless(const Circuit& c, uint32_t qubit_cap) {
  c.validate();
  if (c.n_qubits > qubit_cap) {
    throw std::invalid_argument("circuit exceeds the statevector qubit cap (" +
                                std::to_string(qubit_cap) + ")");
  }
  Statevector psi(c.n_qubits);
  for (const GateOp& op : c.ops) psi.apply(op);
  return psi.distribution();
}

}  // namespace decpauli
