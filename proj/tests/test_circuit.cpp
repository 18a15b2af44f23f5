#include <doctest.h>

#include <numbers>
#include <random>

#include "decpauli/circuit.hpp"
#include "support/oracles.hpp"

using namespace decpauli;

TEST_CASE("parse: basic ops") {
  const Circuit c = parse_circuit("qubits 2\nsx q0\ncz q0,q1");
  CHECK(c.n_qubits == 2);
  REQUIRE(c.ops.size() == 2);
  CHECK(c.ops[0] == GateOp::sx(0));
  CHECK(c.ops[1] == GateOp::cz(0, 1));
}

TEST_CASE("parse: angle is read at full precision") {
  const Circuit c = parse_circuit("qubits 1\nrz(1.5707963267948966) q0");
  REQUIRE(c.ops.size() == 1);
  CHECK(c.ops[0].kind == GateKind::RZ);
  CHECK(c.ops[0].angle == std::numbers::pi / 2);
}

TEST_CASE("parse: comments, blank lines, whitespace") {
  const Circuit c = parse_circuit(
      "# a comment\n\nqubits 3\n  x q2   # trailing comment\n\ncz q0 , q1\n");
  CHECK(c.n_qubits == 3);
  REQUIRE(c.ops.size() == 2);
  CHECK(c.ops[0] == GateOp::x(2));
  CHECK(c.ops[1] == GateOp::cz(0, 1));
}

TEST_CASE("parse: rejections") {
  CHECK_THROWS_AS(parse_circuit("qubits 2\ncz q0,q5"), ParseError);   // out of range
  CHECK_THROWS_AS(parse_circuit("qubits 2\ncz q0"), ParseError);      // arity
  CHECK_THROWS_AS(parse_circuit("qubits 2\nfoo q0"), ParseError);     // unknown gate
  CHECK_THROWS_AS(parse_circuit("qubits 2\ncz q0,q0"), ParseError);   // duplicate qubit
  CHECK_THROWS_AS(parse_circuit("qubits 2\nrz q0"), ParseError);      // missing angle
  CHECK_THROWS_AS(parse_circuit("qubits 2\nsx(0.5) q0"), ParseError); // unexpected chars
  CHECK_THROWS_AS(parse_circuit("x q0"), ParseError);                 // missing header
  CHECK_THROWS_AS(parse_circuit("qubits 0"), ParseError);             // zero qubits
  CHECK_THROWS_AS(parse_circuit(""), ParseError);
}

TEST_CASE("parse: error location is reported") {
  try {
    parse_circuit("qubits 2\nx q0\ncz q0,q9");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column > 1);
  }
}

TEST_CASE("serialize: canonical forms") {
  Circuit single;
  single.n_qubits = 1;
  single.ops = {GateOp::x(0)};
  CHECK(serialize_circuit(single) == "qubits 1\nx q0");

  Circuit empty;
  empty.n_qubits = 2;
  CHECK(serialize_circuit(empty) == "qubits 2");
}

TEST_CASE("serialize/parse round trip on random native circuits") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = testsupport::random_native_circuit(4, 100, rng);
    const Circuit back = parse_circuit(serialize_circuit(c));
    CHECK(structurally_equal(c, back));
  }
}

TEST_CASE("serialize/parse round trip covers the non-native kinds") {
  Circuit c;
  c.n_qubits = 3;
  c.ops = {GateOp::h(0),          GateOp::cx(0, 1), GateOp::ry(0.25, 2),
           GateOp::cp(-1.125, 1, 2), GateOp::measure_all()};
  CHECK(structurally_equal(c, parse_circuit(serialize_circuit(c))));
}

TEST_CASE("validate: rejects out-of-range ops built in memory") {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {GateOp::x(2)};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c.ops = {GateOp{GateKind::CZ, {0}}};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("is_native") {
  CHECK(parse_circuit("qubits 2\nsx q0\ncz q0,q1\nrz(0.5) q1\nx q0").is_native());
  CHECK_FALSE(parse_circuit("qubits 2\nh q0").is_native());
}

TEST_CASE("gate_counts") {
  Circuit c;
  c.n_qubits = 2;

  SUBCASE("empty circuit counts all kinds as zero") {
    const auto counts = gate_counts(c);
    CHECK(counts.size() == static_cast<size_t>(kNumGateKinds));
    for (const auto& [kind, count] : counts) CHECK(count == 0);
  }

  SUBCASE("x,x,sx") {
    c.ops = {GateOp::x(0), GateOp::x(1), GateOp::sx(0)};
    const auto counts = gate_counts(c);
    CHECK(counts.at(GateKind::X) == 2);
    CHECK(counts.at(GateKind::SX) == 1);
    CHECK(counts.at(GateKind::CZ) == 0);
  }
}
