#include "decpauli/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace decpauli {

namespace {

struct GateInfo {
  GateKind kind;
  const char* name;
  int arity;
  bool has_angle;
  bool native;
};

constexpr GateInfo kGateTable[kNumGateKinds] = {
    {GateKind::CZ, "cz", 2, false, true},
    {GateKind::SX, "sx", 1, false, true},
    {GateKind::RZ, "rz", 1, true, true},
    {GateKind::X, "x", 1, false, true},
    {GateKind::H, "h", 1, false, false},
    {GateKind::CX, "cx", 2, false, false},
    {GateKind::RY, "ry", 1, true, false},
    {GateKind::CP, "cp", 2, true, false},
    {GateKind::MeasureAll, "measure_all", 0, false, false},
};

const GateInfo& info(GateKind kind) { return kGateTable[static_cast<size_t>(kind)]; }

}  // namespace

const char* gate_name(GateKind kind) { return info(kind).name; }

bool gate_from_name(std::string_view name, GateKind& out) {
  for (const auto& g : kGateTable) {
    if (name == g.name) {
      out = g.kind;
      return true;
    }
  }
  return false;
}

int gate_arity(GateKind kind) { return info(kind).arity; }
bool gate_has_angle(GateKind kind) { return info(kind).has_angle; }
bool gate_is_native(GateKind kind) { return info(kind).native; }

void Circuit::validate() const {
  if (n_qubits == 0) {
    throw std::invalid_argument("circuit must have at least one qubit");
  }
  for (size_t i = 0; i < ops.size(); ++i) {
    const GateOp& op = ops[i];
    const int arity = gate_arity(op.kind);
    if (static_cast<int>(op.qubits.size()) != arity) {
      std::ostringstream os;
      os << "op " << i << " (" << gate_name(op.kind) << "): expected " << arity
         << " qubit(s), got " << op.qubits.size();
      throw std::invalid_argument(os.str());
    }
    for (uint32_t q : op.qubits) {
      if (q >= n_qubits) {
        std::ostringstream os;
        os << "op " << i << " (" << gate_name(op.kind) << "): qubit q" << q
           << " out of range for " << n_qubits << "-qubit circuit";
        throw std::invalid_argument(os.str());
      }
    }
    if (arity == 2 && op.qubits[0] == op.qubits[1]) {
      std::ostringstream os;
      os << "op " << i << " (" << gate_name(op.kind) << "): duplicate qubit q"
         << op.qubits[0];
      throw std::invalid_argument(os.str());
    }
  }
}

bool Circuit::is_native() const {
  return std::all_of(ops.begin(), ops.end(),
                     [](const GateOp& op) { return gate_is_native(op.kind); });
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
  return a.n_qubits == b.n_qubits && a.ops == b.ops;
}

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line(line),
      column(column) {}

namespace {

class LineParser {
 public:
  LineParser(std::string_view text, int line_no) : text_(text), line_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, static_cast<int>(pos_) + 1, what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view take_word() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  uint32_t take_uint(const char* what) {
    skip_ws();
    uint32_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{} || ptr == text_.data() + pos_) fail(std::string("expected ") + what);
    pos_ = static_cast<size_t>(ptr - text_.data());
    return value;
  }

  double take_double() {
    skip_ws();
    // strtod needs a terminated buffer; lines are short so a copy is fine.
    std::string tail(text_.substr(pos_));
    const char* begin = tail.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<size_t>(end - begin);
    return value;
  }

  uint32_t take_qubit() {
    skip_ws();
    if (!consume('q')) fail("expected qubit reference like q0");
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected qubit index after 'q'");
    }
    return take_uint("qubit index");
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit circuit;
  bool saw_header = false;
  int line_no = 0;
  size_t offset = 0;

  while (offset <= text.size()) {
    size_t eol = text.find('\n', offset);
    std::string_view line = text.substr(
        offset, eol == std::string_view::npos ? text.size() - offset : eol - offset);
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }

    LineParser p(line, line_no);
    if (!p.at_end()) {
      std::string_view word = p.take_word();
      if (word.empty()) p.fail("expected a gate name or 'qubits' header");

      if (!saw_header) {
        if (word != "qubits") p.fail("first statement must be 'qubits N'");
        circuit.n_qubits = p.take_uint("qubit count");
        if (circuit.n_qubits == 0) p.fail("qubit count must be positive");
        if (!p.at_end()) p.fail("trailing characters after qubit count");
        saw_header = true;
      } else {
        GateKind kind;
        if (!gate_from_name(word, kind)) {
          p.fail("unknown gate name '" + std::string(word) + "'");
        }
        GateOp op;
        op.kind = kind;
        if (gate_has_angle(kind)) {
          if (!p.consume('(')) p.fail(std::string(word) + " requires an angle: " +
                                      std::string(word) + "(FLOAT)");
          op.angle = p.take_double();
          if (!p.consume(')')) p.fail("expected ')' after angle");
        }
        const int arity = gate_arity(kind);
        for (int i = 0; i < arity; ++i) {
          if (i > 0) {
            p.skip_ws();
            if (!p.consume(',')) p.fail("expected ',' between qubits");
          }
          op.qubits.push_back(p.take_qubit());
        }
        if (!p.at_end()) p.fail("trailing characters after op");

        for (uint32_t q : op.qubits) {
          if (q >= circuit.n_qubits) {
            p.fail("qubit index q" + std::to_string(q) + " out of range (circuit has " +
                   std::to_string(circuit.n_qubits) + " qubits)");
          }
        }
        if (arity == 2 && op.qubits[0] == op.qubits[1]) {
          p.fail("duplicate qubit q" + std::to_string(op.qubits[0]));
        }
        circuit.ops.push_back(std::move(op));
      }
    }

    if (eol == std::string_view::npos) break;
    offset = eol + 1;
  }

  if (!saw_header) throw ParseError(line_no, 1, "missing 'qubits N' header");
  circuit.validate();
  return circuit;
}

namespace {

std::string format_angle(double angle) {
  // %.17g round-trips every double through strtod.
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", angle);
  return buf;
}

}  // namespace

std::string serialize_circuit(const Circuit& c) {
  c.validate();
  std::string out = "qubits " + std::to_string(c.n_qubits);
  for (const GateOp& op : c.ops) {
    out += '\n';
    out += gate_name(op.kind);
    if (gate_has_angle(op.kind)) {
      out += '(';
      out += format_angle(op.angle);
      out += ')';
    }
    for (size_t i = 0; i < op.qubits.size(); ++i) {
      out += i == 0 ? " q" : ",q";
      out += std::to_string(op.qubits[i]);
    }
  }
  return out;
}

std::map<GateKind, size_t> gate_counts(const Circuit& c) {
  std::map<GateKind, size_t> counts;
  for (const auto& g : kGateTable) counts[g.kind] = 0;
  for (const GateOp& op : c.ops) ++counts[op.kind];
  return counts;
}

}  // namespace decpauli
