#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "decpauli/distribution.hpp"
#include "decpauli/noise.hpp"

namespace decpauli {

struct CountsMetadata {
  std::optional<uint32_t> n_qubits;
  std::optional<uint64_t> shots;
  std::optional<uint64_t> seed;
  std::optional<NoiseModel> noise;
};

/// Counts file: {"metadata": {...}, "counts": {"0101": 123, ...}} with
/// bitstring keys (MSB = highest qubit index) and count-or-probability
/// values. A bare counts object without the wrapper is also accepted.
void write_counts_json(const std::filesystem::path& path,
                       const std::map<uint64_t, uint64_t>& counts, uint32_t n_qubits,
                       const CountsMetadata& meta);

/// Probability variant, for exact simulator output.
void write_probabilities_json(const std::filesystem::path& path,
                              const SparseDistribution& dist, const CountsMetadata& meta);

/// Normalized strict distribution from counts JSON text. Throws on schema
/// violations (mixed-width or non-binary keys, negative weights) and on a
/// zero total.
SparseDistribution parse_counts_json(const std::string& text,
                                     CountsMetadata* meta_out = nullptr);

SparseDistribution read_counts_json(const std::filesystem::path& path,
                                    CountsMetadata* meta_out = nullptr);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace decpauli
