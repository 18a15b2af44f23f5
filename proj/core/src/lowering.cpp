#include "decpauli/lowering.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

namespace decpauli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroAngleTol = 1e-12;

double wrap_angle(double theta) {
  // into (-pi, pi]; RZ angles differing by 2pi differ only by a global phase
  double w = std::remainder(theta, 2 * kPi);
  if (w <= -kPi) w += 2 * kPi;
  return w;
}

/// Gate sink that merges a trailing RZ per qubit as ops stream in.
class NativeEmitter {
 public:
  explicit NativeEmitter(uint32_t n_qubits) : last_rz_(n_qubits, kNone) {}

  void rz(double theta, uint32_t q) {
    if (last_rz_[q] != kNone) {
      GateOp& prev = ops_[last_rz_[q]];
      prev.angle = wrap_angle(prev.angle + theta);
      return;
    }
    ops_.push_back(GateOp::rz(theta, q));
    last_rz_[q] = ops_.size() - 1;
  }

  void push(const GateOp& op) {
    if (op.kind == GateKind::RZ) {
      rz(op.angle, op.qubits[0]);
      return;
    }
    for (uint32_t q : op.qubits) last_rz_[q] = kNone;
    ops_.push_back(op);
  }

  /// Strips RZ whose angle collapsed to 0 mod 2pi.
  std::vector<GateOp> take() {
    std::vector<GateOp> out;
    out.reserve(ops_.size());
    for (GateOp& op : ops_) {
      if (op.kind == GateKind::RZ && std::abs(wrap_angle(op.angle)) <= kZeroAngleTol) {
        continue;
      }
      out.push_back(std::move(op));
    }
    return out;
  }

 private:
  static constexpr size_t kNone = static_cast<size_t>(-1);
  std::vector<GateOp> ops_;
  std::vector<size_t> last_rz_;
};

void emit_h(NativeEmitter& out, uint32_t q) {
  out.push(GateOp::rz(kPi / 2, q));
  out.push(GateOp::sx(q));
  out.push(GateOp::rz(kPi / 2, q));
}

/// General single-qubit unitary u3(theta, phi, lambda) via the ZXZXZ template:
/// RZ(lambda) . SX . RZ(theta + pi) . SX . RZ(phi + pi), up to global phase.
void emit_u3(NativeEmitter& out, uint32_t q, double theta, double phi, double lambda) {
  out.push(GateOp::rz(lambda, q));
  out.push(GateOp::sx(q));
  out.push(GateOp::rz(theta + kPi, q));
  out.push(GateOp::sx(q));
  out.push(GateOp::rz(phi + kPi, q));
}

void emit_cx(NativeEmitter& out, uint32_t c, uint32_t t) {
  emit_h(out, t);
  out.push(GateOp::cz(c, t));
  emit_h(out, t);
}

void lower_op(NativeEmitter& out, const GateOp& op) {
  switch (op.kind) {
    case GateKind::CZ:
    case GateKind::SX:
    case GateKind::RZ:
    case GateKind::X:
      out.push(op);
      break;
    case GateKind::H:
      emit_h(out, op.qubits[0]);
      break;
    case GateKind::CX:
      emit_cx(out, op.qubits[0], op.qubits[1]);
      break;
    case GateKind::RY:
      emit_u3(out, op.qubits[0], op.angle, 0.0, 0.0);
      break;
    case GateKind::CP: {
      const uint32_t a = op.qubits[0], b = op.qubits[1];
      out.push(GateOp::rz(op.angle / 2, a));
      out.push(GateOp::rz(op.angle / 2, b));
      emit_cx(out, a, b);
      out.push(GateOp::rz(-op.angle / 2, b));
      emit_cx(out, a, b);
      break;
    }
    case GateKind::MeasureAll:
      break;  // implicit at circuit end
    default:
      throw std::invalid_argument("unknown gate kind in lowering");
  }
}

void require_native(const Circuit& c, const char* where) {
  if (!c.is_native()) {
    throw std::invalid_argument(std::string(where) + " requires a native circuit");
  }
}

/// Pauli compiled into native gates, in time order. Y is RZ(pi) then X, i.e.
/// X.Z as a matrix, which is Y up to global phase.
void emit_pauli1(std::vector<GateOp>& ops, Pauli1 p, uint32_t q) {
  switch (p) {
    case Pauli1::I:
      break;
    case Pauli1::X:
      ops.push_back(GateOp::x(q));
      break;
    case Pauli1::Z:
      ops.push_back(GateOp::rz(kPi, q));
      break;
    case Pauli1::Y:
      ops.push_back(GateOp::rz(kPi, q));
      ops.push_back(GateOp::x(q));
      break;
  }
}

Pauli1 pauli1_at(const PauliString& p, uint32_t q) {
  const int x = static_cast<int>((p.x_mask >> q) & 1);
  const int z = static_cast<int>((p.z_mask >> q) & 1);
  return static_cast<Pauli1>(x | (z << 1));
}

Circuit twirl_with(const Circuit& c, const std::vector<TwirlSite>& sites) {
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.name = c.name;
  size_t next_site = 0;
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const GateOp& op = c.ops[i];
    if (op.kind != GateKind::CZ) {
      out.ops.push_back(op);
      continue;
    }
    if (next_site >= sites.size()) {
      throw std::invalid_argument("twirl record has fewer sites than the circuit has CZs");
    }
    const TwirlSite& site = sites[next_site++];
    if (site.qubit_a != op.qubits[0] || site.qubit_b != op.qubits[1]) {
      throw std::invalid_argument("twirl record does not match the circuit's CZ layout");
    }
    emit_pauli1(out.ops, site.pre_a, site.qubit_a);
    emit_pauli1(out.ops, site.pre_b, site.qubit_b);
    out.ops.push_back(op);
    emit_pauli1(out.ops, site.post_a, site.qubit_a);
    emit_pauli1(out.ops, site.post_b, site.qubit_b);
  }
  if (next_site != sites.size()) {
    throw std::invalid_argument("twirl record has more sites than the circuit has CZs");
  }
  return out;
}

}  // namespace

Circuit lower_to_native(const Circuit& c) {
  c.validate();
  NativeEmitter emitter(c.n_qubits);
  for (const GateOp& op : c.ops) lower_op(emitter, op);
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.name = c.name;
  out.ops = emitter.take();
  return out;
}

std::string TwirlSite::pre_label() const {
  return std::string{pauli1_char(pre_a), pauli1_char(pre_b)};
}

std::string TwirlSite::post_label() const {
  return std::string{pauli1_char(post_a), pauli1_char(post_b)};
}

std::pair<Circuit, TwirlRecord> pauli_twirl(const Circuit& c, uint64_t seed) {
  c.validate();
  require_native(c, "pauli_twirl");

  TwirlRecord record;
  record.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 15);
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const GateOp& op = c.ops[i];
    if (op.kind != GateKind::CZ) continue;
    const uint32_t a = op.qubits[0], b = op.qubits[1];
    const int code = pick(rng);
    TwirlSite site;
    site.op_index = i;
    site.qubit_a = a;
    site.qubit_b = b;
    site.pre_a = static_cast<Pauli1>(code & 3);
    site.pre_b = static_cast<Pauli1>(code >> 2);
    const PauliString pre = pauli_from_pair(site.pre_a, site.pre_b, a, b, c.n_qubits);
    const PauliString post = conjugate_by_cz(pre, a, b);
    site.post_a = pauli1_at(post, a);
    site.post_b = pauli1_at(post, b);
    record.sites.push_back(site);
  }
  return {twirl_with(c, record.sites), record};
}

Circuit apply_twirl(const Circuit& c, const TwirlRecord& record) {
  c.validate();
  require_native(c, "apply_twirl");
  return twirl_with(c, record.sites);
}

Circuit build_nec(const Circuit& c) {
  c.validate();
  require_native(c, "build_nec");
  Circuit nec = c;
  nec.name = c.name.empty() ? "nec" : c.name + "_nec";
  for (GateOp& op : nec.ops) {
    if (op.kind == GateKind::SX) op.kind = GateKind::X;
  }
  return nec;
}

uint64_t nec_ideal_output(const Circuit& nec) {
  nec.validate();
  uint64_t k = 0;
  for (const GateOp& op : nec.ops) {
    switch (op.kind) {
      case GateKind::X:
        k ^= uint64_t{1} << op.qubits[0];
        break;
      case GateKind::CZ:
      case GateKind::RZ:
      case GateKind::MeasureAll:
        break;  // phase-only on basis states
      case GateKind::SX:
        throw std::invalid_argument("nec_ideal_output: SX would create a superposition");
      default:
        throw std::invalid_argument(
            "nec_ideal_output: circuit must be native and superposition-free");
    }
  }
  return k;
}

}  // namespace decpauli
