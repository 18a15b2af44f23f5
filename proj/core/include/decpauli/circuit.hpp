#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace decpauli {

/// Gate vocabulary. The native hardware set is {CZ, SX, RZ, X}; the remaining
/// kinds are admitted pre-lowering so circuit builders stay readable.
enum class GateKind : uint8_t {
  CZ,
  SX,
  RZ,
  X,
  H,
  CX,
  RY,
  CP,
  MeasureAll,
};

constexpr int kNumGateKinds = 9;

const char* gate_name(GateKind kind);
bool gate_from_name(std::string_view name, GateKind& out);
int gate_arity(GateKind kind);
bool gate_has_angle(GateKind kind);
bool gate_is_native(GateKind kind);

struct GateOp {
  GateKind kind{GateKind::X};
  std::vector<uint32_t> qubits;
  double angle = 0.0;  // radians, meaningful iff gate_has_angle(kind)

  bool operator==(const GateOp&) const = default;

  static GateOp cz(uint32_t a, uint32_t b) { return {GateKind::CZ, {a, b}}; }
  static GateOp sx(uint32_t q) { return {GateKind::SX, {q}}; }
  static GateOp rz(double theta, uint32_t q) { return {GateKind::RZ, {q}, theta}; }
  static GateOp x(uint32_t q) { return {GateKind::X, {q}}; }
  static GateOp h(uint32_t q) { return {GateKind::H, {q}}; }
  static GateOp cx(uint32_t c, uint32_t t) { return {GateKind::CX, {c, t}}; }
  static GateOp ry(double theta, uint32_t q) { return {GateKind::RY, {q}, theta}; }
  static GateOp cp(double lambda, uint32_t a, uint32_t b) {
    return {GateKind::CP, {a, b}, lambda};
  }
  static GateOp measure_all() { return {GateKind::MeasureAll, {}}; }
};

struct Circuit {
  uint32_t n_qubits = 0;
  std::vector<GateOp> ops;
  std::string name;

  /// Throws std::invalid_argument on arity mismatch, duplicate qubits within
  /// an op, or a qubit index >= n_qubits.
  void validate() const;

  bool is_native() const;
};

/// Same gate list on the same width; the label is not part of the structure.
bool structurally_equal(const Circuit& a, const Circuit& b);

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what);
  int line;
  int column;
};

/// Line-based text format:
///   qubits N
///   cz q0,q1
///   rz(1.5707963267948966) q0
/// '#' starts a comment, blank lines are ignored.
Circuit parse_circuit(std::string_view text);

std::string serialize_circuit(const Circuit& c);

/// Per-kind gate totals; kinds absent from the circuit map to zero.
std::map<GateKind, size_t> gate_counts(const Circuit& c);

}  // namespace decpauli
