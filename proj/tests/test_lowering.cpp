#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "decpauli/catalog.hpp"
#include "decpauli/lowering.hpp"
#include "decpauli/statevector.hpp"
#include "support/oracles.hpp"

using namespace decpauli;
using testsupport::circuit_unitary;
using testsupport::phase_aligned_distance;
using testsupport::phase_aligned_matrix_distance;
using testsupport::random_native_circuit;

namespace {

constexpr double kPi = std::numbers::pi;

Circuit single_op(uint32_t n, GateOp op) {
  Circuit c;
  c.n_qubits = n;
  c.ops = {std::move(op)};
  return c;
}

double lowering_distance(const Circuit& original) {
  const Circuit lowered = lower_to_native(original);
  REQUIRE(lowered.is_native());
  return phase_aligned_matrix_distance(circuit_unitary(lowered), circuit_unitary(original));
}

}  // namespace

TEST_CASE("lowering H matches the 2x2 product oracle") {
  const Circuit lowered = lower_to_native(single_op(1, GateOp::h(0)));
  REQUIRE(lowered.ops.size() == 3);
  CHECK(lowered.ops[0].kind == GateKind::RZ);
  CHECK(lowered.ops[0].angle == doctest::Approx(kPi / 2));
  CHECK(lowered.ops[1].kind == GateKind::SX);
  CHECK(lowered.ops[2].kind == GateKind::RZ);
  CHECK(lowering_distance(single_op(1, GateOp::h(0))) < 1e-10);
}

TEST_CASE("lowering CX = H CZ H matches the 4x4 oracle") {
  CHECK(lowering_distance(single_op(2, GateOp::cx(0, 1))) < 1e-10);
  CHECK(lowering_distance(single_op(2, GateOp::cx(1, 0))) < 1e-10);
}

TEST_CASE("lowering RY and CP across angles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  for (int i = 0; i < 12; ++i) {
    CHECK(lowering_distance(single_op(1, GateOp::ry(angle(rng), 0))) < 1e-10);
    CHECK(lowering_distance(single_op(2, GateOp::cp(angle(rng), 0, 1))) < 1e-10);
  }
}

TEST_CASE("lowering preserves the unitary of mixed random circuits") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<int> kind(0, 7);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c;
    c.n_qubits = 3;
    std::uniform_int_distribution<uint32_t> q(0, 2);
    for (int i = 0; i < 25; ++i) {
      uint32_t a = q(rng), b = q(rng);
      while (b == a) b = q(rng);
      switch (kind(rng)) {
        case 0: c.ops.push_back(GateOp::h(a)); break;
        case 1: c.ops.push_back(GateOp::cx(a, b)); break;
        case 2: c.ops.push_back(GateOp::ry(angle(rng), a)); break;
        case 3: c.ops.push_back(GateOp::cp(angle(rng), a, b)); break;
        case 4: c.ops.push_back(GateOp::cz(a, b)); break;
        case 5: c.ops.push_back(GateOp::sx(a)); break;
        case 6: c.ops.push_back(GateOp::rz(angle(rng), a)); break;
        default: c.ops.push_back(GateOp::x(a)); break;
      }
    }
    CHECK(lowering_distance(c) < 1e-10);
  }
}

TEST_CASE("native circuits are fixed points up to RZ merging") {
  Circuit c = parse_circuit("qubits 2\nsx q0\ncz q0,q1\nrz(0.7) q1\nx q0");
  CHECK(structurally_equal(lower_to_native(c), c));

  SUBCASE("adjacent RZ on one qubit merge") {
    Circuit merges = parse_circuit("qubits 1\nrz(0.25) q0\nrz(0.5) q0");
    const Circuit lowered = lower_to_native(merges);
    REQUIRE(lowered.ops.size() == 1);
    CHECK(lowered.ops[0].angle == doctest::Approx(0.75));
  }

  SUBCASE("RZ separated by a gate on the same qubit does not merge") {
    Circuit blocked = parse_circuit("qubits 1\nrz(0.25) q0\nsx q0\nrz(0.5) q0");
    CHECK(lower_to_native(blocked).ops.size() == 3);
  }

  SUBCASE("RZ separated by a gate on another qubit still merges") {
    Circuit other = parse_circuit("qubits 2\nrz(0.25) q0\nx q1\nrz(0.5) q0");
    CHECK(lower_to_native(other).ops.size() == 2);
  }

  SUBCASE("zero-angle RZ is dropped") {
    CHECK(lower_to_native(parse_circuit("qubits 1\nrz(0) q0")).ops.empty());
    Circuit sum = parse_circuit("qubits 1\nrz(3.141592653589793) q0\nrz(3.141592653589793) q0");
    CHECK(lower_to_native(sum).ops.empty());
  }
}

TEST_CASE("pauli_twirl is seed-deterministic and unitary-preserving") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const Circuit c = random_native_circuit(4, 30, rng);
    const auto [t1, r1] = pauli_twirl(c, 1234 + trial);
    const auto [t2, r2] = pauli_twirl(c, 1234 + trial);
    CHECK(structurally_equal(t1, t2));
    CHECK(r1.sites.size() == r2.sites.size());

    Statevector original(c.n_qubits);
    for (const auto& op : c.ops) original.apply(op);
    Statevector twirled(c.n_qubits);
    for (const auto& op : t1.ops) twirled.apply(op);
    CHECK(phase_aligned_distance(twirled.amplitudes(), original.amplitudes()) < 1e-10);
  }
}

TEST_CASE("twirl record posts are the CZ conjugates of the pres") {
  const Circuit c = lower_to_native(make_ghz(4));
  const auto [twirled, record] = pauli_twirl(c, 5);
  CHECK_FALSE(record.sites.empty());
  for (const TwirlSite& site : record.sites) {
    const PauliString pre =
        pauli_from_pair(site.pre_a, site.pre_b, site.qubit_a, site.qubit_b, c.n_qubits);
    const PauliString post =
        pauli_from_pair(site.post_a, site.post_b, site.qubit_a, site.qubit_b, c.n_qubits);
    const PauliString expected = conjugate_by_cz(pre, site.qubit_a, site.qubit_b);
    CHECK(post.x_mask == expected.x_mask);
    CHECK(post.z_mask == expected.z_mask);
  }
}

TEST_CASE("identity twirl leaves the circuit unchanged") {
  const Circuit c = parse_circuit("qubits 2\nsx q0\ncz q0,q1\nrz(0.3) q1");
  TwirlRecord record;
  TwirlSite site;
  site.op_index = 1;
  site.qubit_a = 0;
  site.qubit_b = 1;
  record.sites = {site};  // I (x) I pre and post
  CHECK(structurally_equal(apply_twirl(c, record), c));

  SUBCASE("record/circuit mismatches are rejected") {
    record.sites.clear();
    CHECK_THROWS_AS(apply_twirl(c, record), std::invalid_argument);
  }
}

TEST_CASE("twirl is rejected on non-native circuits") {
  CHECK_THROWS_AS(pauli_twirl(parse_circuit("qubits 2\nh q0"), 1), std::invalid_argument);
}

TEST_CASE("build_nec replaces SX with X and nothing else") {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {GateOp::sx(0), GateOp::cz(0, 1), GateOp::rz(0.37, 1)};
  const Circuit nec = build_nec(c);
  REQUIRE(nec.ops.size() == 3);
  CHECK(nec.ops[0] == GateOp::x(0));
  CHECK(nec.ops[1] == GateOp::cz(0, 1));
  CHECK(nec.ops[2] == GateOp::rz(0.37, 1));

  SUBCASE("a circuit without SX is unchanged") {
    Circuit plain;
    plain.n_qubits = 1;
    plain.ops = {GateOp::x(0), GateOp::rz(1.0, 0)};
    CHECK(structurally_equal(build_nec(plain), plain));
  }

  SUBCASE("idempotent, gate count and CZ placement preserved") {
    const Circuit once = build_nec(c);
    const Circuit twice = build_nec(once);
    CHECK(structurally_equal(once, twice));
    CHECK(once.ops.size() == c.ops.size());
    for (size_t i = 0; i < c.ops.size(); ++i) {
      if (c.ops[i].kind == GateKind::CZ) {
        CHECK(once.ops[i].kind == GateKind::CZ);
        CHECK(once.ops[i].qubits == c.ops[i].qubits);
      }
    }
  }
}

TEST_CASE("GHZ-3 lowered: gate counts and NEC bookkeeping") {
  const Circuit payload = lower_to_native(make_ghz(3));
  const auto payload_counts = gate_counts(payload);
  CHECK(payload_counts.at(GateKind::CZ) == 2);
  CHECK(payload_counts.at(GateKind::H) == 0);
  CHECK(payload_counts.at(GateKind::CX) == 0);

  const Circuit nec = build_nec(payload);
  const auto nec_counts = gate_counts(nec);
  CHECK(nec_counts.at(GateKind::SX) == 0);
  CHECK(nec_counts.at(GateKind::X) == payload_counts.at(GateKind::SX));
  CHECK(nec_counts.at(GateKind::CZ) == payload_counts.at(GateKind::CZ));
}

TEST_CASE("nec_ideal_output propagates bit flips") {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {GateOp::x(0)};
  CHECK(nec_ideal_output(c) == 1);
  CHECK(to_bitstring(nec_ideal_output(c), 2) == "01");

  Circuit phases;
  phases.n_qubits = 2;
  phases.ops = {GateOp::cz(0, 1), GateOp::rz(0.8, 0)};
  CHECK(nec_ideal_output(phases) == 0);

  Circuit bad;
  bad.n_qubits = 1;
  bad.ops = {GateOp::sx(0)};
  CHECK_THROWS_AS(nec_ideal_output(bad), std::invalid_argument);
}

TEST_CASE("nec_ideal_output agrees with noiseless simulation on the catalog") {
  for (const Circuit& pre : {make_ghz(4), make_dicke_one_excitation(4), make_qpe(3, 7.0 / 8.0),
                             make_grover_all_ones(3, -1)}) {
    const Circuit nec = build_nec(lower_to_native(pre));
    const uint64_t k = nec_ideal_output(nec);
    const SparseDistribution sim = simulate_noiseless(nec);
    CHECK(sim.argmax() == k);
    CHECK(sim.at(k) == doctest::Approx(1.0).epsilon(1e-9));
  }
}
