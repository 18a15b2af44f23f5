#include <doctest.h>

#include <filesystem>

#include "decpauli/io.hpp"

using namespace decpauli;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "decpauli_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("counts ingestion normalizes bare objects") {
  const SparseDistribution d = parse_counts_json(R"({"00": 100, "11": 100})");
  CHECK(d.n_qubits == 2);
  CHECK(d.at(0) == doctest::Approx(0.5));
  CHECK(d.at(3) == doctest::Approx(0.5));
  CHECK(d.kind == DistKind::strict);
}

TEST_CASE("counts ingestion handles the wrapped schema with metadata") {
  CountsMetadata meta;
  const SparseDistribution d = parse_counts_json(
      R"({"metadata": {"n_qubits": 2, "shots": 10, "seed": 7,
           "noise_model": {"p1": 0.001, "p2": 0.01, "p_meas": 0}},
          "counts": {"01": 4, "10": 6}})",
      &meta);
  CHECK(d.at(1) == doctest::Approx(0.4));
  CHECK(d.at(2) == doctest::Approx(0.6));
  REQUIRE(meta.shots.has_value());
  CHECK(*meta.shots == 10);
  REQUIRE(meta.noise.has_value());
  CHECK(meta.noise->p2 == doctest::Approx(0.01));
}

TEST_CASE("counts ingestion rejections") {
  CHECK_THROWS(parse_counts_json(R"({"0": 0})"));                  // zero total
  CHECK_THROWS(parse_counts_json(R"({"0": 1, "00": 1})"));         // mixed widths
  CHECK_THROWS(parse_counts_json(R"({"02": 1})"));                 // non-binary key
  CHECK_THROWS(parse_counts_json(R"({"0": -1, "1": 2})"));         // negative count
  CHECK_THROWS(parse_counts_json(R"([1, 2, 3])"));                 // not an object
  CHECK_THROWS(parse_counts_json(R"({"counts": {}})"));            // empty counts
  CHECK_THROWS(parse_counts_json("not json"));
  CHECK_THROWS(parse_counts_json(
      R"({"metadata": {"n_qubits": 3}, "counts": {"00": 1}})"));   // width mismatch
}

TEST_CASE("counts write/read round trip") {
  const auto path = temp_file("roundtrip.json");
  CountsMetadata meta;
  meta.n_qubits = 3;
  meta.shots = 1000;
  meta.seed = 99;
  meta.noise = NoiseModel{0.001, 0.01, 0.0};
  write_counts_json(path, {{0, 900}, {5, 100}}, 3, meta);

  CountsMetadata back;
  const SparseDistribution d = read_counts_json(path, &back);
  CHECK(d.at(0) == doctest::Approx(0.9));
  CHECK(d.at(5) == doctest::Approx(0.1));
  CHECK(*back.shots == 1000);
  CHECK(*back.seed == 99);
  CHECK(back.noise->p1 == doctest::Approx(0.001));
}

TEST_CASE("probability files round trip through the same reader") {
  const auto path = temp_file("probs.json");
  SparseDistribution d;
  d.n_qubits = 2;
  d.entries = {{0, 0.25}, {3, 0.75}};
  write_probabilities_json(path, d, CountsMetadata{});
  const SparseDistribution back = read_counts_json(path);
  CHECK(back.at(0) == doctest::Approx(0.25));
  CHECK(back.at(3) == doctest::Approx(0.75));
}

TEST_CASE("bitstring conventions: MSB is the highest qubit index") {
  CHECK(to_bitstring(1, 3) == "001");
  CHECK(to_bitstring(4, 3) == "100");
  CHECK(from_bitstring("001") == 1);
  CHECK(from_bitstring("100") == 4);
  CHECK_THROWS_AS(from_bitstring("10x"), std::invalid_argument);
  CHECK_THROWS_AS(from_bitstring(""), std::invalid_argument);
}
