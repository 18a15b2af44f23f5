#include "decpauli/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace decpauli {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

json metadata_to_json(const CountsMetadata& meta) {
  json m = json::object();
  if (meta.n_qubits) m["n_qubits"] = *meta.n_qubits;
  if (meta.shots) m["shots"] = *meta.shots;
  if (meta.seed) m["seed"] = *meta.seed;
  if (meta.noise) {
    m["noise_model"] = {{"p1", meta.noise->p1}, {"p2", meta.noise->p2},
                        {"p_meas", meta.noise->p_meas}};
  }
  return m;
}

CountsMetadata metadata_from_json(const json& m) {
  CountsMetadata meta;
  if (m.contains("n_qubits")) meta.n_qubits = m.at("n_qubits").get<uint32_t>();
  if (m.contains("shots")) meta.shots = m.at("shots").get<uint64_t>();
  if (m.contains("seed")) meta.seed = m.at("seed").get<uint64_t>();
  if (m.contains("noise_model")) {
    const json& nj = m.at("noise_model");
    NoiseModel nm;
    nm.p1 = nj.value("p1", 0.0);
    nm.p2 = nj.value("p2", 0.0);
    nm.p_meas = nj.value("p_meas", 0.0);
    meta.noise = nm;
  }
  return meta;
}

}  // namespace

void write_counts_json(const std::filesystem::path& path,
                       const std::map<uint64_t, uint64_t>& counts, uint32_t n_qubits,
                       const CountsMetadata& meta) {
  json doc;
  doc["metadata"] = metadata_to_json(meta);
  json body = json::object();
  for (const auto& [outcome, count] : counts) {
    body[to_bitstring(outcome, n_qubits)] = count;
  }
  doc["counts"] = body;
  write_text_file(path, doc.dump(2) + "\n");
}

void write_probabilities_json(const std::filesystem::path& path,
                              const SparseDistribution& dist, const CountsMetadata& meta) {
  json doc;
  doc["metadata"] = metadata_to_json(meta);
  json body = json::object();
  for (const auto& [outcome, weight] : dist.entries) {
    body[to_bitstring(outcome, dist.n_qubits)] = weight;
  }
  doc["counts"] = body;
  write_text_file(path, doc.dump(2) + "\n");
}

SparseDistribution parse_counts_json(const std::string& text, CountsMetadata* meta_out) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("counts file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("counts file must be a JSON object");

  const json* body = &doc;
  CountsMetadata meta;
  if (doc.contains("counts")) {
    body = &doc.at("counts");
    if (doc.contains("metadata")) meta = metadata_from_json(doc.at("metadata"));
  }
  if (!body->is_object()) throw std::runtime_error("'counts' must be a JSON object");
  if (body->empty()) throw std::runtime_error("counts object is empty");

  size_t width = 0;
  double total = 0.0;
  std::map<uint64_t, double> raw;
  for (const auto& [key, value] : body->items()) {
    if (width == 0) {
      width = key.size();
    } else if (key.size() != width) {
      throw std::runtime_error("counts keys have mixed bitstring widths");
    }
    uint64_t outcome;
    try {
      outcome = from_bitstring(key);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("bad counts key '") + key + "': " + e.what());
    }
    if (!value.is_number()) throw std::runtime_error("counts values must be numbers");
    const double w = value.get<double>();
    if (w < 0.0) throw std::runtime_error("counts values must be nonnegative");
    if (!raw.emplace(outcome, w).second) {
      throw std::runtime_error("duplicate counts key '" + key + "'");
    }
    total += w;
  }
  if (meta.n_qubits && *meta.n_qubits != width) {
    throw std::runtime_error("metadata n_qubits disagrees with the bitstring width");
  }
  if (total <= 0.0) throw std::runtime_error("zero total counts");

  SparseDistribution dist;
  dist.n_qubits = static_cast<uint32_t>(width);
  dist.kind = DistKind::strict;
  for (const auto& [outcome, w] : raw) {
    if (w > 0.0) dist.entries.emplace(outcome, w / total);
  }
  if (meta_out) *meta_out = meta;
  return dist;
}

SparseDistribution read_counts_json(const std::filesystem::path& path,
                                    CountsMetadata* meta_out) {
  return parse_counts_json(read_text_file(path), meta_out);
}

}  // namespace decpauli
