#include <doctest.h>

#include <cmath>
#include <random>

#include "decpauli/catalog.hpp"
#include "decpauli/lowering.hpp"
#include "decpauli/noise.hpp"
#include "support/oracles.hpp"

using namespace decpauli;

TEST_CASE("noise model and channel validation") {
  CHECK_THROWS_AS(NoiseModel{-0.1, 0.0, 0.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel{0.0, 1.5, 0.0}.validate(), std::invalid_argument);

  PauliChannel ch;
  ch.n_qubits = 1;
  PauliString id{1, 0, 0};
  PauliString x{1, 1, 0};
  ch.terms = {{id, 0.6}, {x, 0.4}};
  ch.validate();

  SUBCASE("weights must sum to one") {
    ch.terms[1].second = 0.5;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
  }
  SUBCASE("duplicates are rejected") {
    ch.terms.push_back({x, 0.0});
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
  }
  SUBCASE("negative weights are rejected") {
    ch.terms[0].second = -0.1;
    ch.terms[1].second = 1.1;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
  }
}

TEST_CASE("random channels are valid and seed-deterministic") {
  const PauliChannel a = random_pauli_channel(3, 12, 77);
  const PauliChannel b = random_pauli_channel(3, 12, 77);
  a.validate();
  REQUIRE(a.terms.size() == b.terms.size());
  for (size_t i = 0; i < a.terms.size(); ++i) {
    CHECK(a.terms[i].first == b.terms[i].first);
    CHECK(a.terms[i].second == b.terms[i].second);
  }
}

TEST_CASE("brute_force_assignment: hand cases") {
  SUBCASE("1-qubit {I: 0.9, X: 0.1}") {
    PauliChannel ch;
    ch.n_qubits = 1;
    ch.terms = {{PauliString{1, 0, 0}, 0.9}, {PauliString{1, 1, 0}, 0.1}};
    const DenseMatrix a = brute_force_assignment(ch);
    CHECK(a.at(0, 0) == doctest::Approx(0.9));
    CHECK(a.at(0, 1) == doctest::Approx(0.1));
    CHECK(a.at(1, 0) == doctest::Approx(0.1));
    CHECK(a.at(1, 1) == doctest::Approx(0.9));
  }

  SUBCASE("I/Z-only channels act as the identity") {
    PauliChannel ch;
    ch.n_qubits = 2;
    ch.terms = {{PauliString{2, 0, 0}, 0.5},
                {PauliString{2, 0, 1}, 0.3},
                {PauliString{2, 0, 3}, 0.2}};
    const DenseMatrix a = brute_force_assignment(ch);
    for (uint64_t r = 0; r < 4; ++r) {
      for (uint64_t c = 0; c < 4; ++c) {
        CHECK(a.at(r, c) == doctest::Approx(r == c ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("assignment matrix structure on a random channel") {
  const PauliChannel ch = random_pauli_channel(3, 17, 2024);
  const DenseMatrix a = brute_force_assignment(ch);
  const uint64_t dim = 8;
  for (uint64_t r = 0; r < dim; ++r) {
    double row = 0.0, col = 0.0;
    for (uint64_t c = 0; c < dim; ++c) {
      row += a.at(r, c);
      col += a.at(c, r);
      CHECK(a.at(r, c) == doctest::Approx(a.at(c, r)).epsilon(1e-12));  // symmetric
      // depends on r^c only
      CHECK(a.at(r, c) == doctest::Approx(a.at(r ^ 5, c ^ 5)).epsilon(1e-12));
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("apply_pauli_channel equals the dense matrix action") {
  std::mt19937_64 rng(6);
  const PauliChannel ch = random_pauli_channel(4, 23, 31);
  const DenseMatrix a = brute_force_assignment(ch);

  SparseDistribution x;
  x.n_qubits = 4;
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (uint64_t i = 0; i < 16; ++i) {
    x.entries[i] = expo(rng);
    total += x.entries[i];
  }
  for (auto& [k, v] : x.entries) v /= total;

  const SparseDistribution z = apply_pauli_channel(ch, x);
  for (uint64_t r = 0; r < 16; ++r) {
    double expected = 0.0;
    for (uint64_t c = 0; c < 16; ++c) expected += a.at(r, c) * x.at(c);
    CHECK(z.at(r) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("exact_noisy_distribution: zero noise equals the noiseless simulation") {
  const Circuit c = lower_to_native(make_ghz(3));
  const SparseDistribution exact = exact_noisy_distribution(c, NoiseModel{});
  const SparseDistribution ideal = simulate_noiseless(c);
  CHECK(exact.entries.size() == ideal.entries.size());
  for (const auto& [outcome, weight] : ideal.entries) {
    CHECK(exact.at(outcome) == doctest::Approx(weight).epsilon(1e-12));
  }
}

TEST_CASE("exact_noisy_distribution: single X with depolarizing, by hand Kraus") {
  Circuit c;
  c.n_qubits = 1;
  c.ops = {GateOp::x(0)};
  const double p1 = 0.03;
  const SparseDistribution dist = exact_noisy_distribution(c, NoiseModel{p1, 0.0, 0.0});
  CHECK(dist.at(1) == doctest::Approx(1.0 - 2.0 * p1 / 3.0).epsilon(1e-14));
  CHECK(dist.at(0) == doctest::Approx(2.0 * p1 / 3.0).epsilon(1e-14));
}

TEST_CASE("density matrix trace is preserved by every channel application") {
  const Circuit c = lower_to_native(make_ghz(4));
  DensityMatrix dm(4);
  for (const GateOp& op : c.ops) {
    dm.apply(op);
    if (op.kind == GateKind::CZ) {
      dm.apply_depolarizing2(op.qubits[0], op.qubits[1], 0.01);
    } else {
      dm.apply_depolarizing1(op.qubits[0], 0.001);
    }
    CHECK(std::abs(dm.trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("two-qubit depolarizing equals the explicit 15-Pauli mixture") {
  // random 2-qubit pure state
  std::mt19937_64 rng(17);
  const Circuit c = testsupport::random_native_circuit(2, 15, rng);
  Statevector psi(2);
  for (const auto& op : c.ops) psi.apply(op);

  const double p = 0.2;
  DensityMatrix fast = DensityMatrix::from_pure(psi);
  fast.apply_depolarizing2(0, 1, p);

  // oracle: (1-p) rho + p/15 sum_{P != I} P rho P via statevectors
  std::vector<cdouble> expected(16, cdouble{0.0, 0.0});
  const auto accumulate = [&](const Statevector& s, double w) {
    for (uint64_t r = 0; r < 4; ++r) {
      for (uint64_t col = 0; col < 4; ++col) {
        expected[r * 4 + col] += w * s.amplitudes()[r] * std::conj(s.amplitudes()[col]);
      }
    }
  };
  accumulate(psi, 1.0 - p);
  for (int code = 1; code < 16; ++code) {
    Statevector kicked = psi;
    const uint64_t x = static_cast<uint64_t>(code & 1) | (static_cast<uint64_t>((code >> 2) & 1) << 1);
    const uint64_t z = (static_cast<uint64_t>((code >> 1) & 1)) | (static_cast<uint64_t>(code >> 3) << 1);
    kicked.apply_pauli(x, z);
    accumulate(kicked, p / 15.0);
  }
  for (size_t i = 0; i < 16; ++i) {
    CHECK(std::abs(fast.data()[i] - expected[i]) < 1e-12);
  }
}

TEST_CASE("exact_column_oracle") {
  const Circuit payload = lower_to_native(make_ghz(4));

  SUBCASE("zero noise gives a delta at displacement zero") {
    const AssignmentColumn col = exact_column_oracle(payload, NoiseModel{}, 3);
    CHECK(col.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(col.entries.size() == 1);
  }

  SUBCASE("columns are nonnegative and normalized") {
    const AssignmentColumn col = exact_column_oracle(payload, NoiseModel{0.001, 0.01, 0.0}, 0);
    double total = 0.0;
    for (const auto& [d, w] : col.entries) {
      CHECK(w >= 0.0);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("Clifford circuit: relabeled columns coincide across k") {
    const NoiseModel nm{0.001, 0.01, 0.0};
    const AssignmentColumn c0 = exact_column_oracle(payload, nm, 0);
    const AssignmentColumn c15 = exact_column_oracle(payload, nm, 15);
    for (uint64_t d = 0; d < 16; ++d) {
      CHECK(c0.at(d) == doctest::Approx(c15.at(d)).epsilon(1e-10));
    }
  }
}

TEST_CASE("sample_noisy: zero noise reproduces the ideal distribution") {
  const Circuit c = lower_to_native(make_ghz(2));
  const SparseDistribution dist = sample_noisy(c, NoiseModel{}, 20000, 9);
  CHECK(dist.at(0) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(dist.at(3) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(dist.at(1) == 0.0);
  CHECK(dist.at(2) == 0.0);
}

TEST_CASE("sample_noisy: readout flips follow the binomial rate") {
  Circuit c;
  c.n_qubits = 1;
  const SparseDistribution dist = sample_noisy(c, NoiseModel{0.0, 0.0, 0.1}, 200000, 21);
  CHECK(std::abs(dist.at(1) - 0.1) < 0.005);
}

TEST_CASE("sample_noisy: seed-reproducible and partition-independent") {
  const Circuit c = lower_to_native(make_ghz(3));
  const NoiseModel nm{0.002, 0.02, 0.0};
  SampleOptions one_thread;
  one_thread.threads = 1;
  SampleOptions four_threads;
  four_threads.threads = 4;
  const auto a = sample_noisy_counts(c, nm, 5000, 1234, one_thread);
  const auto b = sample_noisy_counts(c, nm, 5000, 1234, four_threads);
  CHECK(a == b);
  const auto again = sample_noisy_counts(c, nm, 5000, 1234, one_thread);
  CHECK(a == again);
  const auto other_seed = sample_noisy_counts(c, nm, 5000, 1235, one_thread);
  CHECK(a != other_seed);
}

TEST_CASE("sample_noisy: GHZ-2 with CZ noise leaks off the ideal support") {
  const Circuit c = lower_to_native(make_ghz(2));
  const NoiseModel nm{0.0, 0.05, 0.0};
  const SparseDistribution sampled = sample_noisy(c, nm, 100000, 5);
  CHECK(sampled.at(1) + sampled.at(2) > 0.0);

  // statistical consistency with the exact density-matrix evolution
  const SparseDistribution exact = exact_noisy_distribution(c, nm);
  CHECK(exact.at(1) + exact.at(2) > 0.0);
  double tv = 0.0;
  double sigma_sum = 0.0;
  for (uint64_t i = 0; i < 4; ++i) {
    const double p = exact.at(i);
    tv += std::abs(sampled.at(i) - p);
    sigma_sum += std::sqrt(p * (1.0 - p) / 100000.0);
  }
  tv /= 2.0;
  CHECK(tv <= 3.0 * sigma_sum);
}

TEST_CASE("sample_noisy: shots_per_trajectory only trades speed for variance") {
  const Circuit c = lower_to_native(make_ghz(3));
  const NoiseModel nm{0.01, 0.02, 0.0};
  SampleOptions batched;
  batched.shots_per_trajectory = 8;
  const SparseDistribution dist = sample_noisy(c, nm, 40000, 3, batched);
  const SparseDistribution exact = exact_noisy_distribution(c, nm);
  double tv = 0.0;
  for (uint64_t i = 0; i < 8; ++i) tv += std::abs(dist.at(i) - exact.at(i));
  CHECK(tv / 2.0 < 0.05);
}

TEST_CASE("sample_noisy rejects non-native circuits and zero shots") {
  CHECK_THROWS_AS(sample_noisy(make_ghz(2), NoiseModel{}, 100, 1), std::invalid_argument);
  const Circuit c = lower_to_native(make_ghz(2));
  CHECK_THROWS_AS(sample_noisy(c, NoiseModel{}, 0, 1), std::invalid_argument);
}

TEST_CASE("readout flip helper mixes pairwise") {
  std::vector<double> diag = {1.0, 0.0};
  const auto flipped = apply_readout_flips(diag, 1, 0.25);
  CHECK(flipped[0] == doctest::Approx(0.75));
  CHECK(flipped[1] == doctest::Approx(0.25));
}
